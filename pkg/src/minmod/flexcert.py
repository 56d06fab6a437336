"""Flexibility certificates from lower gradings.

A lower grading assigns each generator a non-negative integer with closed
generators at 0 and every differential dropping the grading.  When each
differential is homogeneous of lower degree exactly one less, scaling every
generator v of bidegree (i, j) by 2^(i+j) is a cdga morphism of nonzero
degree, and replacing the base 2 by 2k produces its k-th multiples.  That
family is the flexibility certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cohomology import is_exact
from .gca import Element, StructureError
from .linalg import LinearSolver
from .sullivan import (SullivanAlgebra, apply_algebra_map, dimension_formula,
                       extend_derivation)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LowerGrading:
    """Generator -> lower degree, extended additively to monomials."""

    degrees: tuple  # aligned with alg.generators

    def of_generator(self, alg: SullivanAlgebra, name: str) -> int:
        return self.degrees[alg.free.index[name]]

    def of_monomial(self, mono) -> int:
        return sum(e * l for e, l in zip(mono, self.degrees))

    def levels_of(self, e: Element) -> set:
        return {self.of_monomial(m) for m in e.terms}


def monomial_differential_check(alg: SullivanAlgebra):
    """(True, None) iff every differential is a single monomial or zero."""
    for g, dg in zip(alg.generators, alg.diff):
        if len(dg.terms) > 1:
            return False, g.name
    return True, None


def construct_lower_grading(alg: SullivanAlgebra) -> LowerGrading:
    """Level 0 = closed generators; then iterated least-level assignment.

    A generator enters level i+1 as soon as its differential only involves
    generators of level <= i.  Minimality plus ordering by degree makes the
    iteration terminate; a stuck state is a structural bug.
    """
    n = len(alg.generators)
    level = [None] * n
    for i, dg in enumerate(alg.diff):
        if not dg:
            level[i] = 0
    while any(l is None for l in level):
        progressed = False
        for i, dg in enumerate(alg.diff):
            if level[i] is not None:
                continue
            used = {j for m in dg.terms for j, e in enumerate(m) if e}
            if all(level[j] is not None for j in used):
                level[i] = 1 + max(level[j] for j in used)
                progressed = True
        if not progressed:
            stuck = [alg.generators[i].name for i, l in enumerate(level) if l is None]
            raise StructureError(f"lower grading does not stabilize on {stuck}")
    return LowerGrading(tuple(level))


def check_prop4_condition(alg: SullivanAlgebra, grading: LowerGrading):
    """(True, None) iff d of each level-i generator sits purely in level i-1."""
    for i, (g, dg) in enumerate(zip(alg.generators, alg.diff)):
        if not dg:
            continue
        want = grading.degrees[i] - 1
        if grading.levels_of(dg) != {want}:
            return False, g.name
    return True, None


def two_stage_decomposition(alg: SullivanAlgebra):
    """(Q, P) with Q the closed generators, or None when some dP leaves ^Q."""
    closed = [not dg for dg in alg.diff]
    q = tuple(g.name for g, c in zip(alg.generators, closed) if c)
    p = tuple(g.name for g, c in zip(alg.generators, closed) if not c)
    for dg in alg.diff:
        for m in dg.terms:
            if any(e and not closed[j] for j, e in enumerate(m)):
                return None
    return q, p


# -- scaling morphisms ------------------------------------------------------


@dataclass
class ScalingCertificate:
    """The morphism v -> base^(i+j) v for v of lower degree i, degree j."""

    alg: SullivanAlgebra
    grading: LowerGrading
    base: int
    exponents: tuple  # per generator, i + j
    images: dict      # name -> Element
    degree: Fraction

    def family_description(self) -> str:
        vol_exp = self.degree_exponent()
        return f"degree of the k-th multiple: (2k)^{vol_exp}"

    def degree_exponent(self) -> int:
        """e with degree == base^e (the scaling degree is a pure power)."""
        e = 0
        d = self.degree
        while d > 1:
            d /= self.base
            e += 1
        return e


def scaling_images(alg: SullivanAlgebra, grading: LowerGrading, base: int) -> dict:
    images = {}
    for i, g in enumerate(alg.generators):
        exp = grading.degrees[i] + g.degree
        images[g.name] = alg.gen(g.name).scale(Fraction(base) ** exp)
    return images


def scaling_certificate(alg: SullivanAlgebra, grading: LowerGrading, vol,
                        base: int = 2) -> ScalingCertificate:
    """Build and fully verify the scaling morphism; its degree is nonzero.

    Requires check_prop4_condition to hold; a verification failure here
    indicates a grading bug and raises.
    """
    from .endo import verify_morphism

    ok, offender = check_prop4_condition(alg, grading)
    if not ok:
        raise StructureError(f"lower-degree condition fails at {offender}")
    images = scaling_images(alg, grading, base)
    report = verify_morphism(alg, images, vol)
    if not report.valid:
        raise StructureError(f"scaling morphism failed verification at {report.failing}")
    if not report.degree:
        raise StructureError("scaling morphism has zero degree")
    exps = tuple(grading.degrees[i] + g.degree for i, g in enumerate(alg.generators))
    return ScalingCertificate(alg, grading, base, exps, images, report.degree)


# -- k-th multiples ---------------------------------------------------------


@dataclass
class MultipleCheck:
    k: int
    degree: Fraction
    classes_checked: int
    failing: str | None

    @property
    def ok(self) -> bool:
        return self.failing is None


@dataclass
class MultipleFamilyReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def bigraded_cohomology_basis(alg: SullivanAlgebra, grading: LowerGrading,
                              up_to: int) -> list:
    """Representatives homogeneous in degree and lower degree, per degree <= up_to.

    Returns (degree, lower degree, Element) triples.  Within each bidegree the
    representatives are kernel vectors of d kept only when independent of the
    image arriving from one level up.
    """
    out = []
    for n in range(1, up_to + 1):
        by_level: dict = {}
        for m in alg.basis_of_degree(n):
            by_level.setdefault(grading.of_monomial(m), []).append(m)
        for lev in sorted(by_level):
            monos = by_level[lev]
            kernel = _kernel_elements(alg, monos)
            if not kernel:
                continue
            image = _image_elements(alg, n, lev + 1, grading)
            out += [(n, lev, e) for e in _independent_modulo(kernel, image)]
    return out


def _kernel_elements(alg, monos) -> list:
    solver = LinearSolver()
    rows: dict = {}
    for j, m in enumerate(monos):
        img = extend_derivation(alg, Element(alg.free, {m: ONE}))
        for mm, c in img.terms.items():
            rows.setdefault(mm, {})[j] = c
    for row in rows.values():
        solver.add_equation(row, ZERO)
    basis = solver.kernel_basis(range(len(monos)))
    return [Element(alg.free, {monos[j]: c for j, c in vec.items() if c})
            for vec in basis]


def _image_elements(alg, n, lev, grading) -> list:
    out = []
    for m in alg.basis_of_degree(n - 1):
        if grading.of_monomial(m) != lev:
            continue
        img = extend_derivation(alg, Element(alg.free, {m: ONE}))
        if img:
            out.append(img)
    return out


def _independent_modulo(kernel, image) -> list:
    monos = sorted({m for e in kernel + image for m in e.terms})
    index = {m: j for j, m in enumerate(monos)}
    solver = LinearSolver()
    for e in image:
        solver.add_equation({index[m]: c for m, c in e.terms.items()}, ZERO)
    kept = []
    for e in kernel:
        before = solver.rank
        solver.add_equation({index[m]: c for m, c in e.terms.items()}, ZERO)
        if solver.rank > before:
            kept.append(e)
    return kept


def multiple_family_verify(alg: SullivanAlgebra, grading: LowerGrading, vol,
                           ks, up_to: int | None = None) -> MultipleFamilyReport:
    """For each k: verify the (2k)-scaling morphism and its basis action.

    On every bigraded cohomology representative x of bidegree (i, j) the k-th
    multiple must satisfy [kf(x)] = (2k)^(i+j) [x]; the difference is checked
    for exactness (it vanishes identically on bihomogeneous representatives,
    so the check replays the construction rather than trusting it).
    """
    from .endo import verify_morphism

    top = dimension_formula(alg)
    limit = top if up_to is None else min(up_to, top)
    basis = bigraded_cohomology_basis(alg, grading, limit)
    checks = []
    for k in ks:
        images = scaling_images(alg, grading, 2 * k)
        report = verify_morphism(alg, images, vol)
        if not report.valid:
            checks.append(MultipleCheck(k, None, 0, report.failing))
            continue
        failing = None
        count = 0
        for n, lev, x in basis:
            fx = apply_algebra_map(alg, images, x)
            diff = fx - x.scale(Fraction(2 * k) ** (lev + n))
            if diff and is_exact(alg, diff) is None:
                failing = f"class of degree {n}, level {lev}"
                break
            count += 1
        checks.append(MultipleCheck(k, report.degree, count, failing))
    return MultipleFamilyReport(tuple(checks))
