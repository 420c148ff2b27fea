"""Elementary moves on pants decompositions, paths and desk-scale search.

An elementary move replaces exactly one curve of a pants decomposition:

* an A-move removes a curve joining two distinct pants.  Those two pants
  merge into a four-holed sphere; the move re-pairs its four cuffs into two
  new pants joined by the fresh curve.  A legal re-pairing splits the four
  cuffs two-and-two (a single curve in a four-holed sphere always separates
  its boundary circles two against two).  Degenerate three-and-one splits
  are rejected: they do not arise from an embedded curve, and they can even
  disconnect the pants graph by isolating a pants.
* an S-move removes a self-loop curve.  Its support is a one-holed torus
  and the replacement is combinatorially another self-loop in the same
  cuffs, so only the curve id changes.

A path is a start decomposition together with a list of moves; consecutive
decompositions share all curves except the moved one.  A closed-up path
additionally carries a closure: a curve bijection from the final
decomposition onto the start one witnessing that the monodromy carries the
start system to the final system.  Combinatorially the closure must extend
to a decorated-graph isomorphism respecting leg labels (the monodromy fixes
the boundary pointwise, so the image system is leg-respecting isomorphic to
the original).

Search operates on leg-respecting isomorphism classes of decorated graphs,
which is weaker than isotopy classes of curve systems on the surface, but it
is exactly the granularity the downstream constructions consume.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import MoveError, TribranchError
from .reports import ValidationReport
from .surfaces import (
    CurveId,
    Multicurve,
    PantsDecomposition,
    canonical_key,
    find_isomorphism,
    validate_pants,
)

A_MOVE = "A"
S_MOVE = "S"


@dataclass(frozen=True)
class PantsMove:
    """One elementary move.

    ``pairing`` describes the A-move re-pairing as two groups of cuff
    addresses of the pre-move decomposition (the four support cuffs).  When
    omitted, the original grouping is kept, which replaces the curve without
    re-distributing the cuffs.  S-moves take no pairing.
    """

    removed: CurveId
    added: CurveId
    kind: str
    pairing: tuple = None

    def to_json(self) -> dict:
        doc = {"removed": self.removed, "added": self.added, "kind": self.kind}
        if self.pairing is not None:
            doc["pairing"] = [[list(c) for c in side] for side in self.pairing]
        return doc

    @staticmethod
    def from_json(doc: dict) -> "PantsMove":
        pairing = None
        if doc.get("pairing") is not None:
            pairing = tuple(
                tuple(tuple(c) for c in side) for side in doc["pairing"]
            )
        return PantsMove(doc["removed"], doc["added"], doc["kind"], pairing)


@dataclass
class PantsPath:
    """A move sequence C_0, ..., C_n with a closure onto the start system.

    ``closure`` maps each curve of C_n to the curve of C_0 whose monodromy
    image it is.  A trivial path (no moves) with the identity closure
    describes a monodromy fixing every curve of C_0.
    """

    start: PantsDecomposition
    moves: list = field(default_factory=list)
    closure: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "start": self.start.to_json(),
            "moves": [m.to_json() for m in self.moves],
            "closure": dict(sorted(self.closure.items())),
        }

    @staticmethod
    def from_json(doc: dict) -> "PantsPath":
        return PantsPath(
            start=PantsDecomposition.from_json(doc["start"]),
            moves=[PantsMove.from_json(m) for m in doc.get("moves", [])],
            closure=dict(doc.get("closure", {})),
        )


def move_kind(pd: PantsDecomposition, removed: CurveId) -> str:
    """The move kind forced by the support of ``removed``.

    Equivalent to classifying the merged component of ``cut_components`` with
    the curve erased: a curve between distinct pants merges them into a
    four-holed sphere (A), a self-loop closes a one-holed torus (S).
    """
    if removed not in pd.edges:
        raise MoveError(f"unknown curve {removed!r}")
    return S_MOVE if pd.is_self_loop(removed) else A_MOVE


def _support_cuffs(pd: PantsDecomposition, removed: CurveId) -> list:
    (u, su), (v, sv) = pd.edges[removed]
    cuffs = [(u, s) for s in (1, 2, 3) if s != su]
    cuffs += [(v, s) for s in (1, 2, 3) if s != sv]
    return cuffs


def enumerate_pairings(pd: PantsDecomposition, removed: CurveId) -> list:
    """The three two-and-two re-pairings of an A-move support, in a fixed order.

    Index 0 keeps the original grouping; indices 1 and 2 are the two genuine
    re-distributions.  This ordering is the tie-break used by the search.
    """
    cuffs = sorted(_support_cuffs(pd, removed))
    a = cuffs[0]
    rest = cuffs[1:]
    pairings = []
    for partner in rest:
        other = tuple(c for c in rest if c != partner)
        pairings.append(((a, partner), other))
    # Put the original grouping first.
    (u, _), _ = pd.edges[removed]
    orig = tuple(sorted(c for c in cuffs if c[0] == u))

    def is_original(p):
        return tuple(sorted(p[0])) == orig or tuple(sorted(p[1])) == orig

    pairings.sort(key=lambda p: (not is_original(p), p))
    return pairings


def apply_move(pd: PantsDecomposition, mv: PantsMove) -> PantsDecomposition:
    """Apply one elementary move, returning the new decomposition.

    Raises :class:`MoveError` on an unknown curve, a kind inconsistent with
    the support, a clashing fresh id, or an illegal re-pairing.
    """
    if mv.removed not in pd.edges:
        raise MoveError(f"unknown curve {mv.removed!r}")
    if mv.added in pd.edges:
        raise MoveError(f"added curve id {mv.added!r} already present")
    actual = move_kind(pd, mv.removed)
    if mv.kind != actual:
        raise MoveError(
            f"kind mismatch: move declares {mv.kind!r} but the support of "
            f"{mv.removed!r} forces {actual!r}"
        )

    if actual == S_MOVE:
        edges = dict(pd.edges)
        ends = edges.pop(mv.removed)
        edges[mv.added] = ends
        return PantsDecomposition(pants=pd.pants, edges=edges, legs=dict(pd.legs))

    (u, su), (v, sv) = pd.edges[mv.removed]
    support = set(_support_cuffs(pd, mv.removed))
    if mv.pairing is None:
        side_a = tuple(sorted(c for c in support if c[0] == u))
        side_b = tuple(sorted(c for c in support if c[0] == v))
        pairing = (side_a, side_b)
    else:
        pairing = tuple(tuple(tuple(c) for c in side) for side in mv.pairing)
        flat = [c for side in pairing for c in side]
        if len(pairing) != 2 or sorted(flat) != sorted(support):
            raise MoveError(
                "re-pairing must partition the four support cuffs into two groups"
            )
        sizes = sorted(len(side) for side in pairing)
        if sizes != [2, 2]:
            if _degenerate_pairing_disconnects(pd, mv.removed, pairing):
                raise MoveError(
                    "re-pairing disconnects the graph: the fresh curve would "
                    "close up on one pants and isolate it"
                )
            raise MoveError(
                "re-pairing must split the support cuffs two-and-two; a curve "
                "in a four-holed sphere separates its boundary two against two"
            )

    # The two support pants keep their ids; the group containing the
    # smallest cuff goes to the smaller pants id.  Slot 1 of each new pants
    # carries the fresh curve, slots 2 and 3 its two cuffs in sorted order.
    new_a, new_b = sorted((u, v))
    groups = sorted(tuple(sorted(side)) for side in pairing)
    placement = {}
    for pants_id, group in zip((new_a, new_b), groups):
        for slot, cuff in zip((2, 3), group):
            placement[cuff] = (pants_id, slot)

    edges = {}
    for curve in pd.edges:
        if curve == mv.removed:
            continue
        edges[curve] = tuple(placement.get(end, end) for end in pd.edges[curve])
    edges[mv.added] = ((new_a, 1), (new_b, 1))
    legs = {}
    for label, cuff in pd.legs.items():
        legs[label] = placement.get(cuff, cuff)
    out = PantsDecomposition(pants=pd.pants, edges=edges, legs=legs)
    if not out.is_connected():
        raise MoveError("re-pairing disconnects the graph")
    return out


def _degenerate_pairing_disconnects(pd, removed, pairing) -> bool:
    """Would a three-and-one split leave the graph disconnected?

    For the diagnostic only: build the candidate graph in which the fresh
    curve closes up as a self-loop on the one-cuff side and test
    connectivity.
    """
    small = min(pairing, key=len)
    if len(small) != 1:
        return False
    (u, _), (v, _) = pd.edges[removed]
    lone = small[0]
    nbrs = {p: set() for p in pd.pants}
    for curve in pd.edges:
        if curve == removed:
            continue
        (a, sa), (b, sb) = pd.edges[curve]
        # Endpoints in the support move to the pants of their pairing group.
        a2 = u if (a, sa) == lone else (v if (a, sa) in _support_cuffs(pd, removed) else a)
        b2 = u if (b, sb) == lone else (v if (b, sb) in _support_cuffs(pd, removed) else b)
        nbrs[a2].add(b2)
        nbrs[b2].add(a2)
    seen = set()
    stack = [min(pd.pants)]
    while stack:
        p = stack.pop()
        if p in seen:
            continue
        seen.add(p)
        stack.extend(nbrs[p])
    return len(seen) != len(pd.pants)


def common_curves(c_k: PantsDecomposition, c_next: PantsDecomposition) -> Multicurve:
    """The curves shared by two consecutive decompositions of a path.

    Equal curve id sets are allowed and return everything (the degenerate
    closed-up path); otherwise the sets must differ by exactly one removed
    and one added curve.
    """
    ids_k = set(c_k.edges)
    ids_next = set(c_next.edges)
    if ids_k == ids_next:
        return frozenset(ids_k)
    gone = ids_k - ids_next
    new = ids_next - ids_k
    if len(gone) != 1 or len(new) != 1:
        raise MoveError(
            "not an elementary move: decompositions differ in "
            f"{sorted(gone)} / {sorted(new)}"
        )
    return frozenset(ids_k & ids_next)


def replay(path: PantsPath) -> list:
    """The decompositions C_0, ..., C_n obtained by applying the moves in order."""
    decomps = [path.start]
    for mv in path.moves:
        decomps.append(apply_move(decomps[-1], mv))
    return decomps


def closure_vertex_map(path: PantsPath, decomps=None):
    """Extend the closure curve bijection C_n -> C_0 to a vertex map, or None."""
    from .surfaces import vertex_map_from_curve_bijection

    if decomps is None:
        decomps = replay(path)
    return vertex_map_from_curve_bijection(decomps[-1], decomps[0], dict(path.closure))


def validate_path(path: PantsPath, monodromy=None) -> ValidationReport:
    """Check every path invariant, reporting failures with their step index.

    Checks, in order: the start decomposition is valid; every move applies
    and every intermediate decomposition is valid; the closure is a curve
    bijection from C_n onto C_0 extending to a decorated-graph isomorphism
    that respects leg labels.  When a monodromy action matrix is supplied its
    size is checked against the surface of the path.
    """
    report = ValidationReport()
    sig = path.start.surface_sig()
    report.extend(validate_pants(sig, path.start))
    if not report.ok:
        report.add("start-invalid", "start decomposition invalid; replay skipped", "step 0")
        return report

    decomps = [path.start]
    for k, mv in enumerate(path.moves):
        try:
            nxt = apply_move(decomps[-1], mv)
        except MoveError as err:
            report.add("move-failed", str(err), f"step {k}")
            return report
        step_report = validate_pants(sig, nxt)
        for issue in step_report.entries:
            report.add(issue.code, issue.message, f"step {k}")
        decomps.append(nxt)

    final = decomps[-1]
    closure = dict(path.closure)
    if sorted(closure) != sorted(final.edges):
        report.add("closure-domain",
                   "closure keys differ from the curves of the final system",
                   "closure")
        return report
    if sorted(closure.values()) != sorted(path.start.edges):
        report.add("closure-range",
                   "closure values differ from the curves of the start system",
                   "closure")
        return report
    if closure_vertex_map(path, decomps) is None:
        # Distinguish the common leg-adjacency mistake for a sharper message.
        if _breaks_leg_adjacency(final, path.start, closure):
            report.add("closure-legs", "closure not leg-preserving", "closure")
        else:
            report.add(
                "closure-iso",
                "closure does not extend to a decorated-graph isomorphism",
                "closure",
            )
    if monodromy is not None:
        k = 2 * sig.genus + sig.n_boundary - 1
        if monodromy.matrix.rows != k or monodromy.matrix.cols != k:
            report.add(
                "monodromy-dimension",
                f"monodromy matrix is {monodromy.matrix.rows}x{monodromy.matrix.cols}, "
                f"expected {k}x{k} for {sig}",
                "monodromy",
            )
    return report


def _breaks_leg_adjacency(final, start, closure) -> bool:
    def leg_adjacent(pd):
        leg_pants = {cuff[0] for cuff in pd.legs.values()}
        return {
            c for c in pd.edges
            if pd.edges[c][0][0] in leg_pants or pd.edges[c][1][0] in leg_pants
        }

    src = leg_adjacent(final)
    dst = leg_adjacent(start)
    return any((c in src) != (closure[c] in dst) for c in closure)


def search_path(c: PantsDecomposition, c_target: PantsDecomposition, budget: int):
    """Breadth-first search for a move sequence from ``c`` onto ``c_target``.

    The search runs over leg-respecting isomorphism classes of decorated
    graphs, expanding every A-move re-pairing (in the canonical pairing
    order) and every S-move, curve ids in sorted order.  At most ``budget``
    nodes are expanded; exhaustion returns ``None`` (not an error).  On
    success the returned path carries the found isomorphism as its closure
    and always satisfies :func:`validate_path`.
    """
    if budget < 1:
        raise TribranchError("budget must be a positive integer")
    sig = c.surface_sig()
    if sig != c_target.surface_sig():
        raise TribranchError(
            f"surface mismatch: {sig} vs {c_target.surface_sig()}"
        )
    if not validate_pants(sig, c).ok or not validate_pants(sig, c_target).ok:
        raise TribranchError("both decompositions must be valid for the search")

    target_key = canonical_key(c_target)

    def finish(pd, moves):
        # The closure records the realized isomorphism onto the target.  When
        # the target carries the same curve ids as the start (the closed-up
        # monodromy use), the result is a complete path accepted by
        # validate_path; otherwise it is an open fragment.
        iso = find_isomorphism(pd, c_target)
        assert iso is not None
        _, emap = iso
        return PantsPath(start=c, moves=moves, closure=dict(emap))

    if canonical_key(c) == target_key:
        return finish(c, [])

    fresh = 0
    seen = {canonical_key(c)}
    queue = deque([(c, [])])
    expanded = 0
    while queue and expanded < budget:
        pd, moves = queue.popleft()
        expanded += 1
        for curve in pd.curve_ids():
            kind = move_kind(pd, curve)
            if kind == S_MOVE:
                candidates = [PantsMove(curve, f"n{fresh + 1}", S_MOVE)]
            else:
                candidates = [
                    PantsMove(curve, f"n{fresh + 1}", A_MOVE, pairing)
                    for pairing in enumerate_pairings(pd, curve)
                ]
            for mv in candidates:
                nxt = apply_move(pd, mv)
                key = canonical_key(nxt)
                if key in seen:
                    continue
                fresh += 1
                mv = PantsMove(curve, f"n{fresh}", mv.kind, mv.pairing)
                nxt = apply_move(pd, mv)
                seen.add(key)
                if key == target_key:
                    return finish(nxt, moves + [mv])
                queue.append((nxt, moves + [mv]))
    return None
