"""Open book specifications, their first homology, rank certificates, stabilization.

An open book with page F (genus g, b >= 1 boundary circles) and boundary-fixing
monodromy phi determines a closed 3-manifold: the mapping torus of phi with a
solid torus glued along each boundary torus so that the meridian disc caps the
suspension circle.  On first homology the input data is the action matrix of
phi in the standard basis

    a_1, b_1, ..., a_g, b_g, c_1, ..., c_{b-1}

of H_1(F), where the c_i are boundary circle classes (the last one is
determined, c_b = -(c_1 + ... + c_{b-1})).  A valid action fixes every
boundary class, preserves the algebraic intersection form (symplectic on the
a/b pairs, zero on boundary classes) and is unimodular.

First homology of the closed manifold.  Gluing the solid tori kills, for each
boundary circle, the class of its suspension loop.  That loop is the
suspension class t corrected by a winding class w_i in H_1(F) measuring how
the monodromy drags an arc reaching that boundary circle.  The resulting
presentation is

    H_1(M) = ( H_1(F) + Z<t> ) / < (phi_* - 1) x  for all x;  t + w_i >.

For a monodromy specified directly by its action matrix all windings are
declared zero and the formula collapses to the familiar cokernel of
(phi_* - 1).  Stabilization is the one place where nonzero windings arise:
plumbing a positive Hopf band composes the monodromy with a Dehn twist along
a curve parallel to the fresh boundary circle.  Such a twist acts trivially
on absolute homology; its entire homological content is the winding of the
new circle, and recording it is exactly what keeps H_1(M) unchanged under
stabilization (the ambient manifold does not change).

The rank certificate uses rank pi_1(M) >= (minimal generator count of
H_1(M)).  An Uncertified verdict means the rank-four hypothesis is not
established by this bound; it never asserts the hypothesis is false.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MonodromyError, TribranchError
from .intalg import AbelianGroup, IntMatrix, cokernel, min_generators
from .paths import PantsPath, validate_path
from .reports import ValidationReport
from .surfaces import SurfaceSig

CERTIFIED = "Certified"
UNCERTIFIED = "Uncertified"

RANK_THRESHOLD = 4


def h1_rank(page: SurfaceSig) -> int:
    """Rank of the first homology of the page: 2*genus + boundary - 1."""
    if page.n_boundary < 1:
        raise TribranchError("an open book page needs at least one boundary circle")
    return 2 * page.genus + page.n_boundary - 1


def intersection_form(page: SurfaceSig) -> IntMatrix:
    """The algebraic intersection form on H_1(page) in the standard basis.

    Symplectic 2x2 blocks pair each a_i with b_i; boundary classes pair with
    nothing (they are in the radical).
    """
    k = h1_rank(page)
    rows = [[0] * k for _ in range(k)]
    for i in range(page.genus):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return IntMatrix.from_rows(rows) if k else IntMatrix(0, 0, ())


def transvection(j_form: IntMatrix, c) -> IntMatrix:
    """The homological transvection x -> x + <x, c> c for the pairing ``j_form``.

    This is the action of a Dehn twist along a curve in the class ``c``; it
    automatically fixes all boundary classes and preserves the form, so
    products of transvections are a convenient source of valid monodromies.
    """
    k = j_form.rows
    c = [int(x) for x in c]
    if len(c) != k:
        raise TribranchError(f"class has length {len(c)}, expected {k}")
    jc = [sum(j_form.entries[i][l] * c[l] for l in range(k)) for i in range(k)]
    rows = [
        [(1 if i == j else 0) + c[i] * jc[j] for j in range(k)]
        for i in range(k)
    ]
    return IntMatrix.from_rows(rows) if k else IntMatrix(0, 0, ())


@dataclass(frozen=True)
class MonodromyH1:
    """The action of the monodromy on H_1 of the page, in the standard basis."""

    matrix: IntMatrix

    @staticmethod
    def identity(page: SurfaceSig) -> "MonodromyH1":
        return MonodromyH1(IntMatrix.identity(h1_rank(page)))

    def to_json(self) -> list:
        return self.matrix.to_json()


def validate_monodromy(page: SurfaceSig, m: MonodromyH1) -> ValidationReport:
    """Check the monodromy action invariants against the page."""
    report = ValidationReport()
    k = h1_rank(page)
    mat = m.matrix
    if (mat.rows, mat.cols) != (k, k):
        report.add(
            "matrix-dimension",
            f"matrix is {mat.rows}x{mat.cols}, expected {k}x{k} for page {page}",
        )
        return report
    for i in range(2 * page.genus, k):
        col = mat.column(i)
        if any(col[r] != (1 if r == i else 0) for r in range(k)):
            report.add(
                "boundary-class",
                f"boundary class c_{i - 2 * page.genus + 1} not fixed",
            )
    j = intersection_form(page)
    if mat.transpose().mul(j).mul(mat) != j:
        report.add("intersection-form", "action does not preserve the intersection form")
    if k and abs(mat.det()) != 1:
        report.add("determinant", f"determinant {mat.det()} is not +-1")
    return report


@dataclass(frozen=True)
class OpenBookSpec:
    """A page, a monodromy action, and optionally a closed-up pants path.

    ``windings`` carries one column per boundary circle: the homology class
    by which the monodromy drags arcs reaching that circle.  It is zero for
    directly specified monodromies and only becomes nonzero through
    stabilization; see the module docstring.
    """

    page: SurfaceSig
    monodromy: MonodromyH1
    pants_path: PantsPath = None
    name: str = ""
    windings: IntMatrix = None
    degenerate_path_convention: bool = True

    def winding_matrix(self) -> IntMatrix:
        if self.windings is not None:
            return self.windings
        return IntMatrix.zeros(h1_rank(self.page), self.page.n_boundary)


def validate_spec(spec: OpenBookSpec) -> ValidationReport:
    """Validate the page, monodromy, winding shape and (if present) the path."""
    report = ValidationReport()
    if spec.page.n_boundary < 1:
        report.add("page-boundary", "page must have at least one boundary circle")
        return report
    report.extend(validate_monodromy(spec.page, spec.monodromy))
    k = h1_rank(spec.page)
    w = spec.winding_matrix()
    if (w.rows, w.cols) != (k, spec.page.n_boundary):
        report.add(
            "windings-shape",
            f"windings are {w.rows}x{w.cols}, expected {k}x{spec.page.n_boundary}",
        )
    if spec.pants_path is not None:
        path_sig = spec.pants_path.start.surface_sig()
        if path_sig != spec.page:
            report.add(
                "path-page",
                f"pants path lives on {path_sig}, spec page is {spec.page}",
            )
        path_report = validate_path(spec.pants_path, spec.monodromy)
        for issue in path_report.entries:
            report.add(issue.code, issue.message, f"pants_path {issue.where}".strip())
    return report


def h1_open_book(spec: OpenBookSpec) -> AbelianGroup:
    """First homology of the closed manifold of the open book.

    With zero windings this is exactly the cokernel of (action - identity).
    The general presentation adds the suspension generator t and one filling
    relation t + w_i per boundary circle.
    """
    report = validate_monodromy(spec.page, spec.monodromy)
    if not report.ok:
        raise MonodromyError(report.summary())
    k = h1_rank(spec.page)
    b = spec.page.n_boundary
    m = spec.monodromy.matrix
    w = spec.winding_matrix()
    if (w.rows, w.cols) != (k, b):
        raise MonodromyError(
            f"windings are {w.rows}x{w.cols}, expected {k}x{b}"
        )
    rows = []
    for i in range(k):
        rows.append(
            [m.entries[i][j] - (1 if i == j else 0) for j in range(k)]
            + [w.entries[i][j] for j in range(b)]
        )
    rows.append([0] * k + [1] * b)
    return cokernel(IntMatrix.from_rows(rows))


@dataclass(frozen=True)
class RankCertificate:
    """The computable lower bound for the rank of the fundamental group.

    ``lower_bound`` is the minimal generator count of H_1(M), which bounds
    the rank of pi_1(M) from below.  Certified means the bound is at least
    four.  Uncertified means the hypothesis was not established; it does NOT
    mean the hypothesis is false.
    """

    h1: AbelianGroup
    lower_bound: int
    verdict: str

    @property
    def statement(self) -> str:
        if self.verdict == CERTIFIED:
            return (
                f"H_1(M) = {self.h1}; rank pi_1(M) >= {self.lower_bound} >= 4: "
                "the rank hypothesis is established."
            )
        return (
            f"H_1(M) = {self.h1}; the homology bound gives rank pi_1(M) >= "
            f"{self.lower_bound} < 4: hypothesis not established (this does "
            "not assert the hypothesis is false)."
        )

    def to_json(self) -> dict:
        return {
            "h1": self.h1.to_json(),
            "lower_bound": self.lower_bound,
            "verdict": self.verdict,
            "statement": self.statement,
        }


def rank_certificate(spec: OpenBookSpec) -> RankCertificate:
    """Certify rank pi_1(M) >= 4 through the first homology lower bound."""
    h1 = h1_open_book(spec)
    bound = min_generators(h1)
    verdict = CERTIFIED if bound >= RANK_THRESHOLD else UNCERTIFIED
    return RankCertificate(h1=h1, lower_bound=bound, verdict=verdict)


# ---------------------------------------------------------------------------
# Stabilization.
# ---------------------------------------------------------------------------


def _minor(m: IntMatrix, drop_row: int, drop_col: int) -> IntMatrix:
    rows = [
        [m.entries[i][j] for j in range(m.cols) if j != drop_col]
        for i in range(m.rows)
        if i != drop_row
    ]
    return IntMatrix.from_rows(rows) if rows else IntMatrix(0, 0, ())


def unimodular_inverse(p: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix (via the adjugate)."""
    if p.rows != p.cols:
        raise TribranchError("inverse of a non-square matrix")
    n = p.rows
    if n == 0:
        return p
    d = p.det()
    if abs(d) != 1:
        raise TribranchError(f"matrix is not unimodular (det {d})")
    adj = [
        [((-1) ** (i + j)) * _minor(p, j, i).det() * d for j in range(n)]
        for i in range(n)
    ]
    return IntMatrix.from_rows(adj)


def _stabilized_basis_change(page: SurfaceSig, site: int) -> IntMatrix:
    """Columns: the standard basis of the stabilized page, written in the
    old basis of H_1 extended by the stabilizing-curve class e.

    Boundary bookkeeping: the handle splits circle ``site`` into two; the
    old label stays on the half missing the handle, the fresh label b+1
    names the half parallel to the stabilizing curve, whose class is e.
    """
    g, b = page.genus, page.n_boundary
    k = h1_rank(page)
    n = k + 1
    cols = []
    for i in range(2 * g):
        col = [0] * n
        col[i] = 1
        cols.append(col)
    for label in range(1, b + 1):
        col = [0] * n
        if label <= b - 1:
            col[2 * g + label - 1] = 1
            if label == site:
                col[k] = -1
        else:
            # Circle b was never a basis vector: its class is minus the sum
            # of the other old boundary classes.
            for i in range(1, b):
                col[2 * g + i - 1] = -1
            if site == b:
                col[k] = -1
        cols.append(col)
    return IntMatrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class StabilizationResult:
    spec: OpenBookSpec
    change_of_basis: IntMatrix
    notes: tuple = ()


def stabilize(spec: OpenBookSpec, site: int, extend_path: bool = False) -> StabilizationResult:
    """Plumb a positive Hopf band at boundary circle ``site``.

    The page gains a 1-handle with both feet on circle ``site``: (g, b)
    becomes (g, b+1) and the Euler characteristic drops by exactly one.  The
    monodromy is extended over the new handle class and composed with the
    positive Dehn twist along the stabilizing curve.  That curve is parallel
    to the fresh boundary circle, so the twist is invisible on absolute
    homology and is recorded as the winding of the new circle; this keeps
    the homology of the ambient manifold unchanged.

    The pants path does not transport through a stabilization: the model
    tracks no isotopy data, so silently reusing the old path would fabricate
    disjointness information.  By default the path is cleared.  With
    ``extend_path=True`` the caller asserts the stabilizing curve is disjoint
    from every path curve, and the path is extended by one new curve that
    cuts off the two fresh boundary circles.
    """
    g, b = spec.page.genus, spec.page.n_boundary
    if site < 1 or site > b:
        raise TribranchError(f"site {site} not a boundary label 1..{b}")
    k = h1_rank(spec.page)
    new_page = SurfaceSig(genus=g, n_boundary=b + 1)

    p = _stabilized_basis_change(spec.page, site)
    p_inv = unimodular_inverse(p)

    # Action on H_1 of the new page: the old action extended by the identity
    # on the handle class, conjugated into the new standard basis.  The added
    # twist is along a boundary-parallel curve and acts trivially here.
    old = spec.monodromy.matrix
    extended = IntMatrix.from_rows(
        [list(old.entries[i]) + [0] for i in range(k)] + [[0] * k + [1]]
    )
    new_matrix = p_inv.mul(extended).mul(p)

    # Windings: old circles keep their (transported) windings; the fresh
    # circle b+1 picks up the stabilizing-curve class e on top of whatever
    # the old site circle carried.
    old_w = spec.winding_matrix()
    e_hat = [0] * k + [1]
    new_cols = []
    for label in range(1, b + 1):
        col = [old_w.entries[i][label - 1] for i in range(k)] + [0]
        new_cols.append(col)
    new_cols.append(
        [old_w.entries[i][site - 1] for i in range(k)] + [0]
    )
    new_cols[-1] = [x + y for x, y in zip(new_cols[-1], e_hat)]
    transported = [p_inv.mul(IntMatrix.from_rows([[x] for x in col])) for col in new_cols]
    new_w = IntMatrix.from_rows(
        [[transported[j].entries[i][0] for j in range(b + 1)] for i in range(k + 1)]
    )

    notes = [f"stabilized at boundary circle {site}: page {spec.page} -> {new_page}"]
    new_path = None
    if spec.pants_path is not None:
        if extend_path:
            new_path = _extend_path(spec.pants_path, site)
            notes.append(
                "pants path extended by a curve cutting off the two fresh "
                "boundary circles (caller asserted disjointness)"
            )
        else:
            notes.append(
                "pants path cleared: isotopy data does not transport through "
                "a stabilization (pass extend_path=True to assert disjointness)"
            )

    new_spec = OpenBookSpec(
        page=new_page,
        monodromy=MonodromyH1(new_matrix),
        pants_path=new_path,
        name=spec.name,
        windings=new_w,
        degenerate_path_convention=spec.degenerate_path_convention,
    )
    return StabilizationResult(
        spec=new_spec, change_of_basis=p, notes=tuple(notes)
    )


def _extend_path(path: PantsPath, site: int) -> PantsPath:
    """Append a pants cutting off the two fresh boundary circles at ``site``."""
    start = path.start
    b = start.n_legs
    pants_id = "Pstab"
    while pants_id in start.pants:
        pants_id += "x"
    curve_id = "cstab"
    while curve_id in start.edges:
        curve_id += "x"
    old_cuff = start.legs[site]
    pants = set(start.pants) | {pants_id}
    edges = dict(start.edges)
    edges[curve_id] = (old_cuff, (pants_id, 1))
    legs = dict(start.legs)
    legs[site] = (pants_id, 2)
    legs[b + 1] = (pants_id, 3)
    new_start = type(start)(pants=frozenset(pants), edges=edges, legs=legs)
    closure = dict(path.closure)
    closure[curve_id] = curve_id
    return PantsPath(start=new_start, moves=list(path.moves), closure=closure)
