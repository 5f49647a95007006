"""
Linear Algebra

Exact elimination over the scalar tower:

- SparseEchelon: incremental echelon form keyed by monomials (or any
  ordered keys), used for spans, membership and closure computations
- rank / in_span on dense rows by Gaussian elimination over the field
- bareiss_rank: fraction-free elimination for rows of polynomials in x
- polynomial echelon form over K[x] and the gcd of maximal minors, used to
  locate the parameter values where a generic rank can drop
"""

import itertools
import logging
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import sympy
from sympy import Poly, QQ

from .scalars import LAMBDA, QQ_SQRT2, SQRT2_EXPR, ZERO, Scalar, from_sympy, scalar_to_poly

logger = logging.getLogger(__name__)

Row = Sequence[Scalar]


class SparseEchelon:
    """
    Incremental row echelon form of sparse vectors.

    Each stored row has its largest key (under sort_key) as pivot with
    coefficient 1.
    """

    def __init__(self, sort_key: Callable[[Hashable], object] = None):
        self._key = sort_key or (lambda k: k)
        self._rows: Dict[Hashable, Dict[Hashable, Scalar]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Dict[Hashable, Scalar]) -> Dict[Hashable, Scalar]:
        work = {k: c for k, c in vec.items() if c}
        while True:
            hits = [k for k in work if k in self._rows]
            if not hits:
                return work
            pivot = max(hits, key=self._key)
            factor = work[pivot]
            for k, c in self._rows[pivot].items():
                value = work.get(k, ZERO) - factor * c
                if value:
                    work[k] = value
                else:
                    work.pop(k, None)

    def add(self, vec: Dict[Hashable, Scalar]) -> bool:
        """Insert vec; False when it was already in the span."""
        rest = self.reduce(vec)
        if not rest:
            return False
        pivot = max(rest, key=self._key)
        lead = rest[pivot]
        self._rows[pivot] = {k: c / lead for k, c in rest.items()}
        return True

    def contains(self, vec: Dict[Hashable, Scalar]) -> bool:
        return not self.reduce(vec)


def _dense(row: Row) -> Dict[int, Scalar]:
    return {i: c for i, c in enumerate(row) if c}


def rank(rows: Sequence[Row]) -> int:
    """Rank over the field of fractions (Gaussian elimination)."""
    ech = SparseEchelon()
    for row in rows:
        ech.add(_dense(row))
    return ech.rank


def in_span(rows: Sequence[Row], vec: Row) -> bool:
    ech = SparseEchelon()
    for row in rows:
        ech.add(_dense(row))
    return ech.contains(_dense(vec))


def bareiss_rank(rows: Sequence[Row]) -> int:
    """Fraction-free rank; every division is exact when entries are polynomials."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    prev: Scalar = 1
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev
            m[i][c] = ZERO
        prev = m[r][c]
        r += 1
        if r == len(m):
            break
    return r


def _poly_matrix(rows: Sequence[Row]) -> List[List[Poly]]:
    polys = [[scalar_to_poly(c) for c in row] for row in rows]
    extended = any(p.get_domain() != QQ for row in polys for p in row)
    domain = QQ_SQRT2 if extended else QQ
    return [[p.set_domain(domain) for p in row] for row in polys]


def polynomial_echelon(rows: Sequence[Row]) -> List[List[Poly]]:
    """Nonzero rows of an echelon form reached by unimodular row operations over K[x]."""
    m = _poly_matrix(rows)
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(r, len(m)) if not m[i][c].is_zero]
            if not live:
                break
            best = min(live, key=lambda i: m[i][c].degree())
            m[r], m[best] = m[best], m[r]
            clean = True
            for i in range(r + 1, len(m)):
                if m[i][c].is_zero:
                    continue
                q, rem = m[i][c].div(m[r][c])
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                if not rem.is_zero:
                    clean = False
            if clean:
                r += 1
                break
        if r == len(m):
            break
    return m[:r]


def _poly_det(square: List[List[Poly]]) -> Poly:
    n = len(square)
    a = [list(r) for r in square]
    one = a[0][0].one if n else Poly(1, LAMBDA, domain=QQ)
    prev = one
    sign = 1
    for k in range(n - 1):
        if a[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero), None)
            if swap is None:
                return a[0][0].zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exquo(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def minor_gcd(rows: Sequence[Row], size: int) -> Optional[Poly]:
    """gcd of all size x size minors (None when there are none)."""
    echelon = polynomial_echelon(rows)
    if size == 0 or len(echelon) < size:
        return None
    ncols = len(echelon[0])
    g: Optional[Poly] = None
    for chosen in itertools.combinations(range(len(echelon)), size):
        for cols in itertools.combinations(range(ncols), size):
            det = _poly_det([[echelon[i][j] for j in cols] for i in chosen])
            if det.is_zero:
                continue
            g = det if g is None else g.gcd(det)
            if g.is_ground:
                return g.monic()
    return g.monic() if g is not None else None


def exceptional_candidates(rows: Sequence[Row], size: int) -> Tuple[List[str], List[Scalar]]:
    """
    Squarefree factors of the maximal-minor gcd, with the roots that lie
    in Q(sqrt 2).
    """
    g = minor_gcd(rows, size)
    if g is None or g.is_ground:
        return [], []
    sqf = g.sqf_part()
    _, factors = sympy.factor_list(sqf.as_expr(), LAMBDA, extension=SQRT2_EXPR)
    names: List[str] = []
    roots: List[Scalar] = []
    for factor, _mult in factors:
        poly = Poly(factor, LAMBDA, extension=SQRT2_EXPR)
        names.append(str(poly.as_expr()))
        if poly.degree() == 1:
            a, b = poly.all_coeffs()
            roots.append(from_sympy(-b / a))
    logger.debug(f"Minor gcd of degree {g.degree()} has {len(names)} squarefree factors")
    return names, roots
