"""Equivariant base points s_I for the facets of a window.

s_A is the barycenter of the fundamental alcove; for a face I of its
closure, s_I is the orthogonal projection of s_A onto the affine span of I.
Every other window facet receives s_{g I} = g(s_I) by transport, and all
the ways of reaching a facet are compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .apartment import Facet, alcove_barycenter, closure_le, facet_of_point, facets_of_closed_alcove, support
from .facetcat import Window, build_window
from .rootdata import RootDatum, invariant_form


class BasepointError(AssertionError):
    """Two constructions of the same base point disagree."""


def coroot_span(facet: Facet) -> list:
    """span(Phi_I^vee): the orthogonal complement of the direction of eps_I."""
    rd = facet.rd
    return [rd.coroots[i] for i in sorted(facet.zero_roots) if rd.is_positive(i)]


def project_along_coroots(facet: Facet, x: Sequence) -> tuple:
    """The point of aff(I) of the form x + (combination of Phi_I^vee).

    This is the orthogonal projection for every invariant form, since
    alpha^vee is orthogonal to ker(alpha).
    """
    rd = facet.rd
    sup = support(facet)
    if not sup.levels:
        return la.normalize(la.frac_vec(x))
    cos = [rd.coroots[i] for i, _ in sup.levels]
    rows = [rd.roots[i] for i, _ in sup.levels]
    # alpha_k(x + sum c_j coroot_j) = v_k
    mat = [[la.dot(r, c) for c in cos] for r in rows]
    rhs = [v - rd.pair(i, x) for i, v in sup.levels]
    coeffs = la.solve(mat, rhs)
    if coeffs is None:
        raise BasepointError("projection system is inconsistent")
    out = la.frac_vec(x)
    for a, c in zip(coeffs, cos):
        out = la.vadd(out, la.vscale(a, c))
    return la.normalize(out)


def project_gram(facet: Facet, x: Sequence) -> tuple:
    """Orthogonal projection onto aff(I) computed with the invariant form's Gram matrix."""
    rd = facet.rd
    form = invariant_form(rd)
    sup = support(facet)
    if not sup.levels:
        return la.normalize(la.frac_vec(x))
    # unknown d: alpha(d) = v - alpha(x) for vanishing alpha, B(d, z) = 0 for z in direction
    rows = [la.frac_vec(rd.roots[i]) for i, _ in sup.levels]
    rhs = [v - rd.pair(i, x) for i, v in sup.levels]
    for z in sup.direction:
        rows.append(la.matvec(form.gram, z))
        rhs.append(Fraction(0))
    d = la.solve(rows, rhs)
    if d is None:
        raise BasepointError("Gram projection system is inconsistent")
    return la.normalize(la.vadd(la.frac_vec(x), d))


def _central_difference(rd: RootDatum, v: Sequence) -> bool:
    """v lies in z_g."""
    return all(rd.pair(i, v) == 0 for i in rd.positive)


@dataclass
class BasepointAssignment:
    rd: RootDatum
    window: Window
    points: dict  # facet -> s_I
    log: dict  # facet -> "barycenter" | "projection" | "transport"
    failures: list = field(default_factory=list)

    def __getitem__(self, facet: Facet) -> tuple:
        return self.points[facet]

    @property
    def well_defined(self) -> bool:
        return not self.failures


def assign_s(rd: RootDatum, radius: int = 2) -> BasepointAssignment:
    """Barycenter, projections onto alcove faces, then transport to the window.

    Disagreements between transport paths (modulo z_g) are collected in
    ``failures``; ``check_transport`` turns them into a report.
    """
    win = build_window(rd, radius)
    s_a = alcove_barycenter(rd)
    base = facets_of_closed_alcove(rd)
    points: dict = {}
    log: dict = {}
    failures = []
    for f in base:
        p = project_along_coroots(f, s_a)
        if p != project_gram(f, s_a):
            failures.append(f"projection methods disagree on {f.key}")
        points[f] = p
        log[f] = "barycenter" if f.dim == rd.rank else "projection"
    for g in win.alcoves:
        for f in base:
            img = g.act_facet(f)
            p = g(points[f])
            if img in points:
                if not _central_difference(rd, la.vsub(points[img], p)):
                    failures.append(f"transport of {f.key} to {img.key} disagrees")
            else:
                points[img] = p
                log[img] = "transport"
    return BasepointAssignment(rd, win, points, log, failures)


@dataclass
class CheckReport:
    name: str
    checked: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures


def check_transport(asg: BasepointAssignment) -> CheckReport:
    """Well-definedness: every transport path and every adjacent alcove give the
    same s_I (modulo z_g), and s_I lies in I."""
    rd = asg.rd
    failures = list(asg.failures)
    checked = 0
    s_a = alcove_barycenter(rd)
    base = facets_of_closed_alcove(rd)
    for f, p in asg.points.items():
        checked += 1
        if facet_of_point(rd, p) != f:
            failures.append(f"s_I not in I for {f.key}")
    # recompute from every window alcove whose closure contains the facet
    for g in asg.window.alcoves:
        alcove = g.act_facet(base[-1])
        centre = g(s_a)
        for f in asg.points:
            if closure_le(f, alcove):
                checked += 1
                if not _central_difference(rd, la.vsub(project_along_coroots(f, centre), asg.points[f])):
                    failures.append(f"projection from alcove {alcove.key} onto {f.key} disagrees")
    return CheckReport("transport", checked, failures)


def check_equivariance(asg: BasepointAssignment) -> CheckReport:
    """s_{w I} - w(s_I) lies in z_g for window facets I and window elements w."""
    rd = asg.rd
    failures = []
    checked = 0
    for w in asg.window.elements:
        for f, p in asg.points.items():
            img = w.act_facet(f)
            if img not in asg.points:
                continue
            checked += 1
            if not _central_difference(rd, la.vsub(asg.points[img], w(p))):
                failures.append(f"s not equivariant: {w.describe()} on {f.key}")
    return CheckReport("equivariance", checked, failures)


def check_nesting(asg: BasepointAssignment) -> CheckReport:
    """For I in the closure of J: s_I - s_J in z_g + span(Phi_I^vee) and
    span(Phi_J^vee) inside span(Phi_I^vee)."""
    rd = asg.rd
    zb = rd.center_basis
    failures = []
    checked = 0
    facets = list(asg.points)
    for fi in facets:
        span_i = coroot_span(fi)
        for fj in facets:
            if not closure_le(fi, fj):
                continue
            checked += 1
            diff = la.vsub(asg.points[fi], asg.points[fj])
            if not la.in_span(list(zb) + span_i, diff):
                failures.append(f"s_I - s_J outside z + span(Phi_I^vee) for {fi.key} <= {fj.key}")
            if not all(la.in_span(span_i, c) for c in coroot_span(fj)):
                failures.append(f"span(Phi_J^vee) not inside span(Phi_I^vee) for {fi.key} <= {fj.key}")
    return CheckReport("nesting", checked, failures)


def check_telescoping(rd: RootDatum) -> CheckReport:
    """proj_I(proj_J(s_K)) = proj_I(s_K) for alcove faces I <= J <= K."""
    base = facets_of_closed_alcove(rd)
    failures = []
    checked = 0
    s_a = alcove_barycenter(rd)
    for k in base:
        s_k = project_along_coroots(k, s_a)
        for j in base:
            if not closure_le(j, k):
                continue
            for i in base:
                if not closure_le(i, j):
                    continue
                checked += 1
                if project_along_coroots(i, project_along_coroots(j, s_k)) != project_along_coroots(i, s_k):
                    failures.append(f"projections do not telescope for {i.key} <= {j.key} <= {k.key}")
    return CheckReport("telescoping", checked, failures)


def basepoint_suite(rd: RootDatum, radius: int = 2) -> list[CheckReport]:
    asg = assign_s(rd, radius)
    return [check_transport(asg), check_equivariance(asg), check_nesting(asg), check_telescoping(rd)]
