"""Exact checkers for the tangent-space vanishing conditions.

Two equivalent conditions are implemented over Q:

* condition (*) on a subspace V of W^k (W = Q^n): for every degree
  1 <= i <= min(n, dim V), every alternating i-form on W, summed over the
  k projection pullbacks, vanishes on V.  Multilinearity and alternation
  reduce the check to coordinate forms and basis i-tuples, i.e. to exact
  determinant sums.
* condition (**) on a tuple (A_1, ..., A_n) of subspaces of Q^k: for
  every choice of one vector from each member of a nonempty subset of the
  tuple, the coordinatewise product has coordinate sum zero.

``split_subspace`` embeds a (**) configuration as a (*) subspace and is
the bridge along which the two checkers cross-validate each other.

Also here: the coordinatewise product span of two subspaces, the span
inequality check dim(A.B + A + B) >= dim A + dim B for admissible pairs,
the generic rank of the bilinear multiplication map at random rational
points, and a budgeted randomized search for configurations maximizing
the total dimension (which the theory bounds by k - 1; exceeding the
bound would be a reportable counterexample, not a success).

All verdicts are exact; randomness only chooses where to look.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import det, exact_rank, int_rank, nullspace, rref


class DimensionMismatch(Exception):
    pass


class PreconditionViolated(Exception):
    pass


class Subspace:
    """A linear subspace of Q^ambient_dim given by an independent row basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, rows=()):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        for row in rows:
            if len(row) != ambient_dim:
                raise DimensionMismatch(
                    f"basis row has length {len(row)}, ambient is {ambient_dim}"
                )
        if rows and exact_rank(rows) != len(rows):
            raise ValueError("basis rows are not linearly independent")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", rows)

    @classmethod
    def span(cls, ambient_dim: int, vectors) -> "Subspace":
        """Span of arbitrary vectors; reduces to a canonical basis."""
        vectors = [list(v) for v in vectors]
        if not vectors:
            return cls(ambient_dim)
        reduced, _ = rref(vectors)
        return cls(ambient_dim, reduced)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vector) -> bool:
        vector = [Fraction(x) for x in vector]
        if len(vector) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient")
        stacked = [list(row) for row in self.basis] + [vector]
        return exact_rank(stacked) == self.dim

    def sum_with(self, other: "Subspace") -> "Subspace":
        self._check_same_ambient(other)
        return Subspace.span(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Exact intersection via the kernel of the concatenated sum map."""
        self._check_same_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        stacked = [list(r) for r in self.basis] + [list(r) for r in other.basis]
        transposed = [[stacked[i][c] for i in range(len(stacked))] for c in range(self.ambient_dim)]
        kernel = nullspace(transposed, len(stacked))
        vecs = []
        for coeffs in kernel:
            vec = [
                sum(coeffs[i] * self.basis[i][c] for i in range(self.dim))
                for c in range(self.ambient_dim)
            ]
            vecs.append(vec)
        return Subspace.span(self.ambient_dim, vecs)

    def _check_same_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")

    def canonical_basis(self) -> tuple:
        if not self.basis:
            return ()
        reduced, _ = rref([list(r) for r in self.basis])
        return tuple(tuple(row) for row in reduced)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.canonical_basis() == other.canonical_basis()
        )

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


@dataclass(frozen=True)
class StarViolation:
    """Witness against condition (*): the summed minor that fails to vanish."""

    degree: int
    basis_indices: tuple[int, ...]
    multi_index: tuple[int, ...]
    value: Fraction


@dataclass(frozen=True)
class DoubleStarViolation:
    """Witness against condition (**): components, chosen basis rows, value."""

    components: tuple[int, ...]
    basis_rows: tuple[int, ...]
    value: Fraction


def evaluate_star_datum(V: Subspace, n: int, k: int, basis_indices, multi_index) -> Fraction:
    """Re-evaluate one (*) datum: sum over the k blocks of the minor picked
    by ``multi_index`` rows and ``basis_indices`` basis vectors."""
    i = len(basis_indices)
    total = Fraction(0)
    for j in range(k):
        mat = [
            [V.basis[a][j * n + r] for r in multi_index]
            for a in basis_indices
        ]
        total += det(mat)
    return total


def check_condition_star(V: Subspace, n: int, k: int):
    """True, or the first StarViolation found.

    V must live in (Q^n)^k, blocks of size n side by side.  Degrees above
    min(n, dim V) vanish identically and are not checked.
    """
    if V.ambient_dim != n * k:
        raise DimensionMismatch(f"V has ambient {V.ambient_dim}, expected n*k = {n * k}")
    for i in range(1, min(n, V.dim) + 1):
        for basis_indices in itertools.combinations(range(V.dim), i):
            for multi_index in itertools.combinations(range(n), i):
                value = evaluate_star_datum(V, n, k, basis_indices, multi_index)
                if value != 0:
                    return StarViolation(i, basis_indices, multi_index, value)
    return True


def check_condition_doublestar(spaces):
    """True, or the first DoubleStarViolation found.

    ``spaces`` is a list of subspaces of the same Q^k.  For each nonempty
    subset of (nonzero) components and each choice of one basis row from
    each, the coordinatewise product must sum to zero.  Singletons are the
    coordinate-sum condition, pairs the standard pairing condition.
    """
    if not spaces:
        return True
    k = spaces[0].ambient_dim
    for sp in spaces:
        if sp.ambient_dim != k:
            raise DimensionMismatch("all component subspaces must share the ambient Q^k")
    active = [(idx, sp) for idx, sp in enumerate(spaces) if sp.dim > 0]
    for size in range(1, len(active) + 1):
        for chosen in itertools.combinations(active, size):
            row_ranges = [range(sp.dim) for _, sp in chosen]
            for rows in itertools.product(*row_ranges):
                total = Fraction(0)
                for j in range(k):
                    prod = Fraction(1)
                    for (_, sp), r in zip(chosen, rows):
                        prod *= sp.basis[r][j]
                    total += prod
                if total != 0:
                    return DoubleStarViolation(
                        components=tuple(idx for idx, _ in chosen),
                        basis_rows=rows,
                        value=total,
                    )
    return True


def split_subspace(spaces) -> Subspace:
    """Embed a tuple (A_1, ..., A_n) of subspaces of Q^k into (Q^n)^k.

    A functional lambda in A_i becomes the vector whose j-th block is
    lambda_j * e_i.  Dimensions add, and the embedded subspace satisfies
    condition (*) exactly when the tuple satisfies condition (**).
    """
    n = len(spaces)
    if n == 0:
        raise DimensionMismatch("need at least one component subspace")
    k = spaces[0].ambient_dim
    rows = []
    for i, sp in enumerate(spaces):
        if sp.ambient_dim != k:
            raise DimensionMismatch("all component subspaces must share the ambient Q^k")
        for lam in sp.basis:
            vec = [Fraction(0)] * (n * k)
            for j in range(k):
                vec[j * n + i] = lam[j]
            rows.append(vec)
    return Subspace(n * k, rows)


def product_span(A: Subspace, B: Subspace) -> Subspace:
    """Span of coordinatewise products of basis pairs (bilinearity makes
    basis pairs sufficient)."""
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    vectors = [
        [a * b for a, b in zip(ra, rb)]
        for ra in A.basis
        for rb in B.basis
    ]
    return Subspace.span(A.ambient_dim, vectors)


def _check_pair_preconditions(A: Subspace, B: Subspace):
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    for label, sp in (("A", A), ("B", B)):
        for row in sp.basis:
            if sum(row) != 0:
                raise PreconditionViolated(f"{label} basis row {row} has nonzero sum")
    for ra in A.basis:
        for rb in B.basis:
            if sum(a * b for a, b in zip(ra, rb)) != 0:
                raise PreconditionViolated(f"rows {ra} and {rb} are not orthogonal")


def pair_lemma_check(A: Subspace, B: Subspace) -> tuple[int, int, bool]:
    """(dim(A.B + A + B), dim A + dim B, lhs >= rhs) for an admissible pair.

    Admissible means every basis row sums to zero and the two bases are
    orthogonal under the standard pairing; violations raise.
    A False verdict would contradict the span inequality and is surfaced
    by callers as a counterexample finding.
    """
    _check_pair_preconditions(A, B)
    prod = product_span(A, B)
    total = prod.sum_with(A).sum_with(B)
    lhs = total.dim
    rhs = A.dim + B.dim
    return lhs, rhs, lhs >= rhs


def mu_rank_at(A: Subspace, B: Subspace, a, b) -> int:
    """Rank of the differential (alpha, beta) -> alpha o b + a o beta of the
    coordinatewise multiplication map at the point (a, b)."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    columns = []
    for alpha in A.basis:
        columns.append([alpha[j] * b[j] for j in range(A.ambient_dim)])
    for beta in B.basis:
        columns.append([a[j] * beta[j] for j in range(B.ambient_dim)])
    if not columns:
        return 0
    return exact_rank(columns)


def mu_generic_rank(A: Subspace, B: Subspace, seed: int, samples: int = 4) -> int:
    """Max exact rank of the multiplication differential over ``samples``
    random rational points of (e + A) x (e + B).

    The admissibility preconditions of the span inequality are required.
    The generic value is dim A + dim B; a random point may miss the
    generic locus, which is why the max over several samples is reported.
    """
    _check_pair_preconditions(A, B)
    k = A.ambient_dim
    rng = random.Random(seed)
    e = [Fraction(1)] * k
    best = 0
    for _ in range(max(1, samples)):
        a = list(e)
        for row in A.basis:
            c = rng.randint(-5, 5)
            a = [x + c * y for x, y in zip(a, row)]
        b = list(e)
        for row in B.basis:
            c = rng.randint(-5, 5)
            b = [x + c * y for x, y in zip(b, row)]
        best = max(best, mu_rank_at(A, B, a, b))
    return best


# ---------------------------------------------------------------------------
# witnesses and random generation
# ---------------------------------------------------------------------------


def kernel_of_sum_subspace(k: int) -> Subspace:
    """The (k-1)-dimensional kernel of the coordinate-sum map on Q^k."""
    if k < 1:
        raise ValueError("k must be positive")
    rows = []
    for i in range(k - 1):
        row = [0] * k
        row[i] = 1
        row[i + 1] = -1
        rows.append(row)
    return Subspace(k, rows)


def _random_sum_zero_vector(k: int, rng: random.Random, bound: int = 4) -> list[int]:
    head = [rng.randint(-bound, bound) for _ in range(k - 1)]
    return head + [-sum(head)]


def _random_subspace_in_sum_zero(k: int, dim: int, rng: random.Random) -> Subspace:
    """Random dim-dimensional subspace of the sum-zero hyperplane with
    small-integer basis vectors."""
    if dim == 0:
        return Subspace.zero(k)
    for _ in range(200):
        rows = [_random_sum_zero_vector(k, rng) for _ in range(dim)]
        if int_rank([list(r) for r in rows]) == dim:
            return Subspace(k, rows)
    raise RuntimeError("failed to sample an independent basis")


def _integer_rows(fraction_rows) -> list[list[int]]:
    out = []
    for row in fraction_rows:
        denom = 1
        for x in row:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        out.append([int(x * denom) for x in row])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def random_admissible_pair(
    k: int, seed_or_rng, dim_a: int | None = None, dim_b: int | None = None
) -> tuple[Subspace, Subspace]:
    """Random (A, B) satisfying the span-inequality preconditions exactly.

    A is sampled inside the sum-zero hyperplane; B inside the intersection
    of the hyperplane with the orthogonal complement of A, which enforces
    both conditions by construction.
    """
    rng = seed_or_rng if isinstance(seed_or_rng, random.Random) else random.Random(seed_or_rng)
    if k < 2:
        raise ValueError("k must be at least 2")
    if dim_a is None:
        dim_a = rng.randint(1, min(3, k - 1))
    A = _random_subspace_in_sum_zero(k, dim_a, rng)
    constraint = [[1] * k] + [list(r) for r in A.basis]
    comp_rows = _integer_rows(nullspace(constraint, k))
    comp_dim = len(comp_rows)
    if dim_b is None:
        dim_b = rng.randint(0, min(3, comp_dim))
    if dim_b == 0:
        return A, Subspace.zero(k)
    for _ in range(200):
        rows = []
        for _ in range(dim_b):
            coeffs = [rng.randint(-3, 3) for _ in range(comp_dim)]
            rows.append(
                [sum(c * comp_rows[t][j] for t, c in enumerate(coeffs)) for j in range(k)]
            )
        if int_rank([list(r) for r in rows]) == dim_b:
            return A, Subspace(k, rows)
    raise RuntimeError("failed to sample an independent complement basis")


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


@dataclass
class SearchResult:
    k: int
    n: int
    best_sum: int
    best_config: list[list[list[int]]]
    evaluations: int
    bound: int
    nonzero_components: int
    counterexample: list[list[list[int]]] | None = None

    @property
    def within_bound(self) -> bool:
        return self.best_sum <= self.bound


def _doublestar_holds_int(bases: list[list[list[int]]], k: int) -> bool:
    """Fast exact (**) check on integer bases, with early exit."""
    active = [b for b in bases if b]
    for rows in active:
        for row in rows:
            if sum(row) != 0:
                return False
    for size in range(2, len(active) + 1):
        for chosen in itertools.combinations(active, size):
            for pick in itertools.product(*chosen):
                total = 0
                for j in range(k):
                    prod = 1
                    for vec in pick:
                        prod *= vec[j]
                        if prod == 0:
                            break
                    total += prod
                if total != 0:
                    return False
    return True


def _config_sum(bases: list[list[list[int]]]) -> int:
    """True total dimension (ranks, not row counts)."""
    return sum(int_rank([list(r) for r in rows]) for rows in bases if rows)


def _structured_candidates(k: int, n: int):
    """Deterministic seeds: the kernel-of-sum witness, orthogonal splits of
    the sum-zero hyperplane, and a small finite-field sweep over F_3 lifted
    back to Q (every candidate is re-verified exactly by the caller)."""
    e_perp = [list(r) for r in _integer_rows([[Fraction(x) for x in row] for row in kernel_of_sum_subspace(k).basis])]
    config = [e_perp] + [[] for _ in range(n - 1)]
    yield config
    if n >= 2:
        for d1 in range(1, k - 1):
            first = e_perp[:d1]
            constraint = [[1] * k] + [list(r) for r in first]
            rest = _integer_rows(nullspace(constraint, k))
            config = [first, rest] + [[] for _ in range(n - 2)]
            yield config
    if n >= 2 and k <= 6:
        # 1-dimensional pairs over F_3, lifted to representatives in {-1,0,1}
        lines = []
        seen = set()
        for vec in itertools.product((0, 1, 2), repeat=k):
            if all(v == 0 for v in vec) or sum(vec) % 3 != 0:
                continue
            first = next(v for v in vec if v)
            inv = 1 if first == 1 else 2
            canon = tuple((inv * v) % 3 for v in vec)
            if canon in seen:
                continue
            seen.add(canon)
            lines.append([v - 3 if v == 2 else v for v in canon])
        for va, vb in itertools.combinations(lines, 2):
            if sum(a * b for a, b in zip(va, vb)) % 3 == 0:
                config = [[va], [vb]] + [[] for _ in range(n - 2)]
                yield config


def _random_candidate(k: int, n: int, rng: random.Random) -> list[list[list[int]]]:
    bases = []
    for _ in range(n):
        dim = rng.randint(0, min(3, k - 1))
        rows = [_random_sum_zero_vector(k, rng, bound=3) for _ in range(dim)]
        bases.append(rows)
    return bases


def search_max_total_dimension(
    k: int,
    n: int,
    budget: int,
    seed: int,
    workers: int = 1,
) -> SearchResult:
    """Budgeted search for (**) configurations maximizing total dimension.

    Structured seeds run first in a shared deterministic phase (so the
    best total is independent of the worker count); the remaining budget
    is split across per-worker random streams.  The theoretical bound is
    k - 1; a configuration exceeding it is recorded as a counterexample,
    which callers must treat as a build-failing finding.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < 1:
        raise ValueError("n must be at least 1")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    bound = k - 1
    best_sum = -1
    best_config: list[list[list[int]]] = []
    evaluations = 0
    counterexample = None

    def consider(bases: list[list[list[int]]]):
        nonlocal best_sum, best_config, counterexample
        if not _doublestar_holds_int(bases, k):
            return
        total = _config_sum(bases)
        if total > best_sum:
            # authoritative re-verification over Q before accepting
            spaces = [Subspace.span(k, [list(r) for r in rows]) for rows in bases]
            if check_condition_doublestar(spaces) is not True:
                return
            best_sum = total
            best_config = [[list(r) for r in rows] for rows in bases]
            if total > bound and counterexample is None:
                counterexample = best_config

    for config in _structured_candidates(k, n):
        if evaluations >= budget:
            break
        evaluations += 1
        consider(config)

    remaining = max(0, budget - evaluations)
    shares = [remaining // workers] * workers
    for w in range(remaining % workers):
        shares[w] += 1
    for w, share in enumerate(shares):
        rng = random.Random(seed * 1_000_003 + w)
        for _ in range(share):
            evaluations += 1
            consider(_random_candidate(k, n, rng))

    nonzero = sum(1 for rows in best_config if rows)
    return SearchResult(
        k=k,
        n=n,
        best_sum=best_sum,
        best_config=best_config,
        evaluations=evaluations,
        bound=bound,
        nonzero_components=nonzero,
        counterexample=counterexample,
    )


# ---------------------------------------------------------------------------
# plain-text subspace files
# ---------------------------------------------------------------------------


class _TokenReader:
    def __init__(self, text: str):
        self.tokens = text.split()
        self.pos = 0

    def take(self) -> str:
        if self.pos >= len(self.tokens):
            raise ValueError("unexpected end of subspace file")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    def block(self, width: int) -> Subspace:
        dim = int(self.take())
        rows = [[Fraction(self.take()) for _ in range(width)] for _ in range(dim)]
        return Subspace(width, rows) if rows else Subspace.zero(width)


def parse_star_file(text: str) -> tuple[int, int, Subspace]:
    """Condition-(*) input: line "k n", then one block of rows in (Q^n)^k.

    A block is a dimension line followed by that many basis rows; rows
    list the k size-n projection blocks side by side.  Entries are
    integers or fractions like ``-3/2``.
    """
    reader = _TokenReader(text)
    k = int(reader.take())
    n = int(reader.take())
    V = reader.block(n * k)
    if not reader.done():
        raise ValueError("trailing tokens after the condition-(*) block")
    return k, n, V


def parse_doublestar_file(text: str) -> tuple[int, int, list[Subspace]]:
    """Condition-(**) input: line "k n", then n blocks of rows in Q^k."""
    reader = _TokenReader(text)
    k = int(reader.take())
    n = int(reader.take())
    spaces = [reader.block(k) for _ in range(n)]
    if not reader.done():
        raise ValueError(f"trailing tokens after {n} blocks")
    return k, n, spaces
