"""The four essentiality conditions and their certificates.

A tribranched surface is essential when

  (1) no branch is a disc,
  (2) no component of the surface is contained in a ball,
  (3) for each block, each branch in its closure includes pi_1-injectively
      into the block's compactification, and
  (4) no block's inclusion into the ambient manifold is surjective on the
      fundamental group.

Conditions (1) is decided outright.  Conditions (2) and (3) are certified
structurally: the built-in constructions produce only incidences whose
injectivity is guaranteed by how the pieces sit in the product and solid
torus blocks, and a connected complex with a page-derived branch of negative
Euler characteristic cannot fit in a ball.  A complex outside this whitelist
is reported NotCertified, never Pass: the checker performs no group theory
and refuses to fabricate any.

Condition (4) combines two facts: every block of the outer construction has
a fundamental group generated by at most three elements, and the rank
certificate establishes rank pi_1(M) >= 4.  An Uncertified rank certificate
makes the condition NotCertified, which means "not established", never
"false".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import (
    HORIZONTAL_ANNULUS,
    MERGED_PIECE,
    NAIVE_PAGE,
    PAGE_TAXONOMIES,
    PANTS_PIECE,
    PRODUCT_BLOCK,
    PUSHOFF_ANNULUS,
    SOLID_TORUS,
    TORUS_ANNULUS,
    TribranchedComplex,
    check_local_models,
)
from .errors import TribranchError
from .openbook import CERTIFIED, RankCertificate
from .surfaces import SurfaceSig

PASS = "Pass"
STRUCTURAL_PASS = "StructuralPass"
FAIL = "Fail"
NOT_CERTIFIED = "NotCertified"

ESSENTIAL = "Essential"
NOT_ESTABLISHED = "NotEstablished"

# (branch taxonomy, block kind) pairs whose pi_1-injectivity is guaranteed by
# the constructions: page pieces and climbing/push-off annuli sit as essential
# subsurfaces in the product blocks next to them; torus annuli run in the
# longitude direction of their solid torus and laterally along the products.
PI1_INJECTIVE_WHITELIST = frozenset(
    [
        (NAIVE_PAGE, PRODUCT_BLOCK),
        (PANTS_PIECE, PRODUCT_BLOCK),
        (MERGED_PIECE, PRODUCT_BLOCK),
        (HORIZONTAL_ANNULUS, PRODUCT_BLOCK),
        (PUSHOFF_ANNULUS, PRODUCT_BLOCK),
        (TORUS_ANNULUS, PRODUCT_BLOCK),
        (TORUS_ANNULUS, SOLID_TORUS),
    ]
)

MAX_BLOCK_RANK = 3

CONDITION_NAMES = {
    1: "no branch is a disc",
    2: "no component lies in a ball",
    3: "branch-to-block inclusions are pi_1-injective",
    4: "no block carries the whole fundamental group",
}


@dataclass(frozen=True)
class ConditionResult:
    number: int
    status: str
    witness: str

    def to_json(self) -> dict:
        return {
            "condition": f"({self.number})",
            "name": CONDITION_NAMES[self.number],
            "status": self.status,
            "witness": self.witness,
        }


@dataclass
class EssentialityReport:
    """Per-condition statuses and the overall verdict.

    The overall verdict is Essential exactly when every condition is Pass or
    StructuralPass.
    """

    conditions: list
    notes: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        good = all(c.status in (PASS, STRUCTURAL_PASS) for c in self.conditions)
        return ESSENTIAL if good else NOT_ESTABLISHED

    def condition(self, number: int) -> ConditionResult:
        for c in self.conditions:
            if c.number == number:
                return c
        raise KeyError(number)

    def to_json(self) -> dict:
        return {
            "conditions": [c.to_json() for c in self.conditions],
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def check_essential(tc: TribranchedComplex, cert: RankCertificate) -> EssentialityReport:
    """Evaluate the four essentiality conditions for a complex.

    Requires clean local models (three germs per circle and consistent
    incidences); a dirty complex is rejected outright.
    """
    local = check_local_models(tc)
    if not local.ok:
        raise TribranchError(f"dirty local models: {local.summary()}")

    conditions = []
    notes = []

    # (1) No branch is a disc.
    discs = [b.id for b in tc.branches if b.sig == SurfaceSig(0, 1)]
    if discs:
        conditions.append(
            ConditionResult(1, FAIL, f"disc branches: {', '.join(sorted(discs))}")
        )
    else:
        conditions.append(
            ConditionResult(1, PASS, f"none of the {len(tc.branches)} branches is a disc")
        )

    # (2) No component in a ball: certified structurally by connectivity plus
    # a page-derived branch of negative Euler characteristic.
    connected = tc.is_connected()
    anchor = next(
        (
            b.id
            for b in tc.branches
            if b.taxonomy in PAGE_TAXONOMIES and b.sig.euler_char < 0
        ),
        None,
    )
    if connected and anchor is not None:
        conditions.append(
            ConditionResult(
                2,
                STRUCTURAL_PASS,
                f"complex is connected and contains the page-derived branch "
                f"{anchor} with negative Euler characteristic",
            )
        )
    else:
        reason = "complex is disconnected" if not connected else (
            "no page-derived branch of negative Euler characteristic"
        )
        conditions.append(ConditionResult(2, NOT_CERTIFIED, reason))

    # (3) pi_1-injectivity via the construction whitelist.
    blocks = {b.id: b for b in tc.blocks}
    offending = []
    for branch in tc.branches:
        for block_id in tc.sides[branch.id]:
            pair = (branch.taxonomy, blocks[block_id].kind)
            if pair not in PI1_INJECTIVE_WHITELIST:
                offending.append((branch.id, block_id))
    if offending:
        first = offending[0]
        conditions.append(
            ConditionResult(
                3,
                NOT_CERTIFIED,
                f"{len(offending)} incidence(s) outside the certified patterns, "
                f"first: branch {first[0]} in block {first[1]}",
            )
        )
    else:
        conditions.append(
            ConditionResult(
                3,
                STRUCTURAL_PASS,
                "every branch-block incidence matches a construction-certified "
                "pi_1-injective pattern",
            )
        )

    # (4) No block surjects: small block ranks plus the rank certificate.
    oversized = [b.id for b in tc.blocks if b.pi1_rank_bound > MAX_BLOCK_RANK]
    if oversized:
        conditions.append(
            ConditionResult(
                4,
                NOT_CERTIFIED,
                "blocks with fundamental group rank bound above "
                f"{MAX_BLOCK_RANK}: {', '.join(sorted(oversized))}",
            )
        )
    elif cert.verdict != CERTIFIED:
        conditions.append(
            ConditionResult(
                4,
                NOT_CERTIFIED,
                f"rank certificate is {cert.verdict} (lower bound "
                f"{cert.lower_bound} < 4): hypothesis not established, "
                "not asserted false",
            )
        )
    else:
        max_rank = max((b.pi1_rank_bound for b in tc.blocks), default=0)
        conditions.append(
            ConditionResult(
                4,
                PASS,
                f"every block needs at most {max_rank} <= {MAX_BLOCK_RANK} "
                f"generators while rank pi_1(M) >= {cert.lower_bound} >= 4",
            )
        )

    if conditions[1].status == STRUCTURAL_PASS:
        notes.append(
            "condition (2) is certified by this tool's structural reading: "
            "a connected complex with a page-derived branch of negative "
            "Euler characteristic cannot fit in a ball"
        )
    if tc.meta.get("degenerate_path_convention_used"):
        notes.append(
            "degenerate path convention used: the curve system sits at a "
            "single level and every curve carries a horizontal annulus"
        )
    s_supports = tc.meta.get("s_move_supports", 0)
    if s_supports:
        notes.append(
            f"{s_supports} one-holed torus support piece(s) occurred "
            "(S-move variant; rank bound 2)"
        )
    return EssentialityReport(conditions=conditions, notes=notes)
