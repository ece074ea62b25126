"""The gk-connector linear system over Z[b] and its Cramer solution.

With ``a = x*GC`` and ``b = x(q-1)``, the conditional generating functions
``GC(.|i)`` (words ending in letter i) satisfy

    GC(.|i) - b * sum_{j >= k-i+1} GC(.|j) = a,     i = 1..k,

i.e. ``A @ GC(.|*) = a * ones`` with ``A = I - b * [i + j >= k + 1]``.
Every determinant here is a polynomial in b; ``a`` enters only through one
column and is divided out.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .algebra import BiPoly, InexactDivision, Poly, RationalGF, X, bpoly, ratgf, substitute_b


@dataclass(frozen=True)
class PolyMatrix:
    entries: tuple[tuple[Poly, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("PolyMatrix must be square with k >= 1")
        object.__setattr__(self, "entries", rows)

    @property
    def k(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Poly:
        i, j = ij
        return self.entries[i][j]

    def replace_column(self, col: int, values: Sequence[Poly]) -> "PolyMatrix":
        """Copy with 0-based column ``col`` replaced by ``values``."""
        return PolyMatrix(
            tuple(
                tuple(values[i] if j == col else e for j, e in enumerate(row))
                for i, row in enumerate(self.entries)
            )
        )

    def to_json(self) -> list[list[list[str]]]:
        return [[e.to_json() for e in row] for row in self.entries]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)


def build_system_matrix(k: int) -> PolyMatrix:
    """``A[i][j] = [i == j] - b*[i + j >= k + 1]`` with 1-based i, j."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return PolyMatrix(
        tuple(
            tuple(
                bpoly(int(i == j), -int(i + j >= k + 1))
                for j in range(1, k + 1)
            )
            for i in range(1, k + 1)
        )
    )


def poly_det(m: PolyMatrix) -> Poly:
    """Determinant by Bareiss fraction-free elimination.

    Each step divides by the previous pivot; over Z[b] those divisions are
    exact, and :class:`InexactDivision` would signal a broken invariant.
    """
    n = m.k
    a = [list(row) for row in m.entries]
    sign = 1
    prev = bpoly(1)
    for c in range(n - 1):
        if a[c][c].is_zero():
            swap = next((r for r in range(c + 1, n) if not a[r][c].is_zero()), None)
            if swap is None:
                return bpoly()
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        piv = a[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                num = a[i][j] * piv - a[i][c] * a[c][j]
                try:
                    a[i][j] = num.exact_div(prev)
                except InexactDivision as exc:
                    raise InexactDivision(
                        f"Bareiss step ({c}, {i}, {j}) not exact; matrix ring is not a domain?"
                    ) from exc
            a[i][c] = bpoly()
        prev = piv
    return Poly(a[n - 1][n - 1].coeffs, "b") * sign


def cofactor_det(m: PolyMatrix) -> Poly:
    """Laplace expansion along the first row. Exponential; an oracle for small k."""
    rows = [list(r) for r in m.entries]

    def rec(mat: list[list[Poly]]) -> Poly:
        if len(mat) == 1:
            return mat[0][0]
        total = bpoly()
        for j, e in enumerate(mat[0]):
            if e.is_zero():
                continue
            minor = [row[:j] + row[j + 1:] for row in mat[1:]]
            term = e * rec(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return Poly(rec(rows).coeffs, "b")


def detA_closed_form(k: int) -> Poly:
    """``sum_{i=0..k} (-1)^floor((i+1)/2) * C(floor((k-i)/2) + i, i) * b^i``."""
    return bpoly(*((-1) ** ((i + 1) // 2) * comb((k - i) // 2 + i, i) for i in range(k + 1)))


def term(k: int, j: int) -> Poly:
    """The j-th summand of the denominator sum; its sign pattern depends on the parity of k."""
    if k % 2 == 0:
        outer = (-1) ** (j // 2)
        inner = [(-1) ** ((j - i) // 2) for i in range(1, j + 1)]
    else:
        outer = (-1) ** ((j + 1) // 2)
        inner = [(-1) ** ((j - i + 1) // 2) for i in range(1, j + 1)]
    coeffs = [1] + [outer * s * comb((j - i) // 2 + i, i) for i, s in zip(range(1, j + 1), inner)]
    return bpoly(*coeffs)


def term_list(k: int) -> list[Poly]:
    return [term(k, j) for j in range(k)]


def lemma_term_sum(k: int) -> Poly:
    total = bpoly()
    for t in term_list(k):
        total = total + t
    return Poly(total.coeffs, "b")


def cramer_numerators(k: int, det=poly_det) -> list[Poly]:
    """``det(A_l) / a`` for l = 1..k: A with column l replaced by all ones."""
    A = build_system_matrix(k)
    ones = [bpoly(1)] * k
    return [Poly(det(A.replace_column(col, ones)).coeffs, "b") for col in range(k)]


def numerator_permutation(k: int) -> list[int | None]:
    """For each column l (1-based list position), the index j with ``N_l == t_j``.

    ``None`` marks a numerator that matches no term.
    """
    terms = term_list(k)
    out: list[int | None] = []
    for n in cramer_numerators(k):
        out.append(next((j for j, t in enumerate(terms) if t == n), None))
    return out


def multiset_match(k: int) -> bool:
    key = lambda p: p.coeffs  # noqa: E731
    return sorted(cramer_numerators(k), key=key) == sorted(term_list(k), key=key)


def solve_conditional_gfs(k: int) -> list[RationalGF]:
    """``GC(.|l) = x * GC * N_l(b) / det A(b)`` for l = 1..k."""
    from .genfunc import gkcon_gf

    gc = gkcon_gf(k)
    detA = ratgf(substitute_b(poly_det(build_system_matrix(k))))
    a = gc * X
    return [(a * substitute_b(n)).divide(detA) for n in cramer_numerators(k)]


def reconstruct_gkcon_gf(det: Poly, numerator_sum: Poly) -> RationalGF:
    """``det / (det - x * sum)`` after substituting ``b = x(q-1)``."""
    d = substitute_b(det)
    return ratgf(d, d - X * substitute_b(numerator_sum))


# Worked examples as published, for adjudication in the verify report.
# Determinants of A, keyed by k; ascending coefficients in b.
PUBLISHED_DETERMINANTS: dict[int, tuple[int, ...]] = {
    1: (1,),
    2: (1, -1, -1),
    3: (1, -2, -1, 1),
    4: (1, -2, -3, 1, 1),
    5: (1, -3, -3, 4, 1, -1),
    6: (1, -3, -6, 4, 5, -1, -1),
}

# det(A_l)/a, keyed by k, listed for l = 1..k.
PUBLISHED_CRAMER: dict[int, list[tuple[int, ...]]] = {
    1: [(1,)],
    2: [(1,), (1, -1)],
    3: [(1, -1), (1,), (1, 1, -1)],
    4: [(1, -1, -1), (1,), (1, 1), (1, 2, -1, -1)],
    5: [(1, -2, -1, 1), (1, -1), (1,), (1, 1, -1), (1, 2, -3, -1, 1)],
    6: [(1, -2, -3, 1, 1), (1, -1, -1), (1,), (1, 1), (1, 2, -1, -1), (1, 3, -3, -4, 1, 1)],
}

# Published system matrices, entries as (constant, coefficient of b).
PUBLISHED_MATRICES: dict[int, list[list[tuple[int, int]]]] = {
    1: [[(1, 0)]],
    2: [[(1, 0), (0, -1)], [(0, -1), (1, -1)]],
    3: [[(1, 0), (0, 0), (0, -1)], [(0, 0), (1, -1), (0, -1)], [(0, -1), (0, -1), (1, -1)]],
}


def _published_matrix_from_rows(rows: list[str]) -> list[list[tuple[int, int]]]:
    table = {"1": (1, 0), "0": (0, 0), "-b": (0, -1), "1-b": (1, -1)}
    return [[table[tok] for tok in row.split()] for row in rows]


PUBLISHED_MATRICES[4] = _published_matrix_from_rows(
    ["1 0 0 -b", "0 1 -b -b", "0 -b 1-b -b", "-b -b -b 1-b"]
)
PUBLISHED_MATRICES[5] = _published_matrix_from_rows(
    ["1 0 0 0 -b", "0 1 0 -b -b", "0 0 1-b -b -b", "0 -b -b 1-b -b", "-b -b -b -b 1-b"]
)
PUBLISHED_MATRICES[6] = _published_matrix_from_rows(
    [
        "1 0 0 0 0 -b",
        "0 1 0 0 -b -b",
        "0 0 1 -b -b -b",
        "0 0 -b 1-b -b -b",
        "0 -b -b -b 1-b -b",
        "-b -b -b -b -b 1-b",
    ]
)


def published_matrix(k: int) -> PolyMatrix:
    return PolyMatrix(tuple(tuple(bpoly(c, d) for c, d in row) for row in PUBLISHED_MATRICES[k]))


@dataclass(frozen=True)
class Discrepancy:
    what: str
    k: int
    index: int | None
    published: str
    computed: str

    def describe(self) -> str:
        where = f"k={self.k}" + (f", l={self.index}" if self.index is not None else "")
        return f"{self.what} ({where}): published {self.published}, computed {self.computed}"


def published_discrepancies() -> list[Discrepancy]:
    """Compare every published matrix, determinant and Cramer value with direct computation."""
    out: list[Discrepancy] = []
    for k in sorted(PUBLISHED_MATRICES):
        pub, built = published_matrix(k), build_system_matrix(k)
        if pub != built:
            out.append(Discrepancy("system matrix", k, None, _mat_str(pub), _mat_str(built)))
    for k, coeffs in sorted(PUBLISHED_DETERMINANTS.items()):
        got = poly_det(build_system_matrix(k))
        if got != bpoly(*coeffs):
            out.append(Discrepancy("det A", k, None, str(bpoly(*coeffs)), str(got)))
    for k, values in sorted(PUBLISHED_CRAMER.items()):
        got = cramer_numerators(k)
        for ell, (pub, comp) in enumerate(zip(values, got), start=1):
            if bpoly(*pub) != comp:
                out.append(
                    Discrepancy("det A_l / a", k, ell, f"a*({bpoly(*pub)})", f"a*({comp})")
                )
    return out


def _mat_str(m: PolyMatrix) -> str:
    return "[" + "; ".join(", ".join(str(e) for e in row) for row in m.entries) + "]"


def column_prefix_claim_holds(k: int) -> list[bool]:
    """Whether ``det(A_l)/a == t_0 + ... + t_{l-1}`` for each l (the per-column form)."""
    terms = term_list(k)
    out = []
    prefix = bpoly()
    for n, t in zip(cramer_numerators(k), terms):
        prefix = Poly((prefix + t).coeffs, "b")
        out.append(n == prefix)
    return out
