"""Exact graded linear algebra for Sullivan algebras.

Differential matrices per degree, closed/exact tests with witnesses, Betti
numbers, volume-form verification and the top-class functional that reads
off mapping degrees.  Everything is solved by deterministic Gauss-Jordan
elimination over Q (first nonzero pivot in basis order).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .gca import Element, StructureError
from .linalg import Inconsistent, LinearSolver
from .sullivan import SullivanAlgebra, extend_derivation, dimension_formula

ZERO = Fraction(0)
ONE = Fraction(1)


class VolumeRejection(ValueError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass
class DifferentialMatrix:
    """Sparse exact matrix of d from degree n to degree n+1.

    Column j expands d(domain[j]) over the codomain basis; entries are kept
    per column as {row index: coefficient}.
    """

    degree: int
    domain: tuple
    codomain: tuple
    columns: list


@lru_cache(maxsize=None)
def d_matrix(alg: SullivanAlgebra, n: int) -> DifferentialMatrix:
    domain = alg.basis_of_degree(n)
    codomain = alg.basis_of_degree(n + 1)
    row_index = {m: r for r, m in enumerate(codomain)}
    columns = []
    for mono in domain:
        img = extend_derivation(alg, Element(alg.free, {mono: ONE}))
        columns.append({row_index[m]: c for m, c in img.terms.items()})
    return DifferentialMatrix(n, domain, codomain, columns)


@lru_cache(maxsize=None)
def _rank_d(alg: SullivanAlgebra, n: int) -> int:
    if n < 0:
        return 0
    mat = d_matrix(alg, n)
    # rank of the column space: insert columns as rows of the transpose
    solver = LinearSolver()
    for col in mat.columns:
        if col:
            solver.add_equation(dict(col), ZERO)
    return solver.rank


def is_closed(alg: SullivanAlgebra, e: Element) -> bool:
    if e and not e.is_homogeneous():
        raise StructureError("is_closed requires a homogeneous element")
    return not extend_derivation(alg, e)


@dataclass
class ExactnessWitness:
    target: Element
    preimage: Element

    def replay(self, alg: SullivanAlgebra) -> bool:
        return extend_derivation(alg, self.preimage) == self.target


def is_exact(alg: SullivanAlgebra, e: Element):
    """A witness w with d(w) = e, or None when the system is inconsistent.

    The input must be homogeneous and closed.  Witnesses are a particular
    solution of the sparse system; they are reproducible but not canonical.
    """
    if not e:
        return ExactnessWitness(e, alg.free.zero())
    if not is_closed(alg, e):
        raise StructureError("is_exact requires a closed element")
    n = e.degree()
    if n == 0:
        return None
    mat = d_matrix(alg, n - 1)
    row_index = {m: r for r, m in enumerate(mat.codomain)}
    rows: dict = {}
    for j, col in enumerate(mat.columns):
        for r, c in col.items():
            rows.setdefault(r, {})[j] = c
    rhs = {}
    for m, c in e.terms.items():
        rhs[row_index[m]] = c
    solver = LinearSolver()
    try:
        for r in sorted(set(rows) | set(rhs)):
            solver.add_equation(rows.get(r, {}), rhs.get(r, ZERO))
    except Inconsistent:
        return None
    sol = solver.particular_solution()
    pre = alg.free.element({mat.domain[j]: c for j, c in sol.items()})
    return ExactnessWitness(e, pre)


@lru_cache(maxsize=None)
def betti(alg: SullivanAlgebra, n: int) -> int:
    if n < 0:
        return 0
    dim_n = len(alg.basis_of_degree(n))
    return dim_n - _rank_d(alg, n) - _rank_d(alg, n - 1)


def betti_table(alg: SullivanAlgebra, up_to: int) -> list:
    return [betti(alg, n) for n in range(up_to + 1)]


# -- the top-class functional ----------------------------------------------


@dataclass
class TopFunctional:
    """A linear functional phi on the top-degree piece with phi o d = 0.

    phi(vol) = 1, so phi(e) is the top-class coefficient of any closed e.
    Its existence certifies that the volume representative is not exact.
    """

    alg: SullivanAlgebra
    degree: int
    phi: dict  # monomial -> Fraction

    def apply(self, e: Element):
        """phi(e); works for Fraction and for symbolic (MPoly) coefficients."""
        total = None
        for m, c in e.terms.items():
            v = self.phi.get(m)
            if v:
                total = c * v if total is None else total + c * v
        return ZERO if total is None else total

    def replay_annihilates_d(self) -> bool:
        mat = d_matrix(self.alg, self.degree - 1)
        for col in mat.columns:
            s = ZERO
            for r, c in col.items():
                v = self.phi.get(mat.codomain[r])
                if v:
                    s += c * v
            if s:
                return False
        return True


def top_functional_from_volume(alg: SullivanAlgebra, vol: Element):
    """Solve for phi with phi(d(anything)) = 0 and phi(vol) = 1.

    Returns None iff vol is exact.
    """
    n = vol.degree()
    mat = d_matrix(alg, n - 1)
    basis = mat.codomain
    row_index = {m: r for r, m in enumerate(basis)}
    solver = LinearSolver()
    try:
        for col in mat.columns:
            if col:
                solver.add_equation(dict(col), ZERO)
        solver.add_equation({row_index[m]: c for m, c in vol.terms.items()}, ONE)
    except Inconsistent:
        return None
    sol = solver.particular_solution()
    phi = {basis[r]: c for r, c in sol.items()}
    return TopFunctional(alg, n, phi)


def tensor_top_functional(prod: SullivanAlgebra, fa: TopFunctional, fb: TopFunctional) -> TopFunctional:
    """phi_A (x) phi_B on a tensor product, supported on bidegree (top, top).

    Vanishing on exact forms follows from the Kunneth decomposition; tests
    spot-check it on random elements since the full top-degree solve is out
    of reach on products.
    """
    phi = {}
    for ma, ca in fa.phi.items():
        for mb, cb in fb.phi.items():
            if ca and cb:
                phi[ma + mb] = ca * cb
    return TopFunctional(prod, fa.degree + fb.degree, phi)


@dataclass
class VolumeForm:
    representative: Element
    degree: int
    functional: TopFunctional


def verify_volume_form(alg: SullivanAlgebra, e: Element, cert) -> VolumeForm:
    """Accept a closed, non-exact representative of the top degree.

    Raises :class:`VolumeRejection` carrying the failed condition.  The
    returned VolumeForm carries the separating functional used to certify
    non-exactness (and later to read off mapping degrees).
    """
    from .sullivan import EllipticityCertificate

    if not isinstance(cert, EllipticityCertificate):
        raise VolumeRejection("no ellipticity certificate: formal dimension undefined")
    if not e:
        raise VolumeRejection("zero element")
    if not e.is_homogeneous():
        raise VolumeRejection("not homogeneous")
    top = dimension_formula(alg)
    if e.degree() != top:
        raise VolumeRejection(f"degree {e.degree()} != formal dimension {top}")
    if extend_derivation(alg, e):
        raise VolumeRejection("not closed")
    if alg.tensor_factors is not None:
        functional = _tensor_volume_functional(alg, e)
    else:
        functional = top_functional_from_volume(alg, e)
    if functional is None:
        raise VolumeRejection("exact")
    return VolumeForm(e, top, functional)


def _tensor_volume_functional(alg: SullivanAlgebra, e: Element):
    """Build the product functional and check it separates e."""
    (a, cert_a, vol_a), (b, cert_b, vol_b) = alg.tensor_factors
    fa = _factor_functional(a, cert_a, vol_a)
    fb = _factor_functional(b, cert_b, vol_b)
    f = tensor_top_functional(alg, fa, fb)
    lam = f.apply(e)
    if not lam:
        raise VolumeRejection("not separated by the product functional")
    if lam != ONE:
        f = TopFunctional(alg, f.degree, {m: c / lam for m, c in f.phi.items()})
    return f


def _factor_functional(factor: SullivanAlgebra, cert, vol) -> TopFunctional:
    if vol is None:
        raise StructureError("tensor factor carries no volume representative")
    return verify_volume_form(factor, vol, cert).functional


def _top_cohomology_is_one_dimensional(alg: SullivanAlgebra, n: int) -> bool:
    if alg.tensor_factors is not None:
        # Kunneth: the top line is the product of the factor top lines
        (a, *_), (b, *_) = alg.tensor_factors
        return (_top_cohomology_is_one_dimensional(a, dimension_formula(a))
                and _top_cohomology_is_one_dimensional(b, dimension_formula(b)))
    return betti(alg, n) == 1


def top_class_coefficient(alg: SullivanAlgebra, e: Element, vol: VolumeForm):
    """The unique rational lam with [e] = lam [vol] in top cohomology."""
    if e and not e.is_homogeneous():
        raise StructureError("top_class_coefficient requires a homogeneous element")
    if e and e.degree() != vol.degree:
        raise StructureError(f"element degree {e.degree()} is not the top degree {vol.degree}")
    if extend_derivation(alg, e):
        raise StructureError("element is not closed")
    if not _top_cohomology_is_one_dimensional(alg, vol.degree):
        raise StructureError("top cohomology is not 1-dimensional")
    return vol.functional.apply(e)
