"""
The convention ledger: every sign, variable and labeling choice that the
rest of the package depends on, in one hashable place.

Diagram invariants of the literature are only defined up to a handful of
global choices (chirality of "positive", variable normalization, labeling
order).  All such choices made here are exposed as data so reports can
carry a fingerprint of the exact conventions they were computed under.
"""

from __future__ import annotations

import hashlib
import json

CONVENTIONS: dict[str, str] = {
    "internal_variable":
        "all exact results live in Z[s, s^-1] with q = s^2; output converts "
        "to q when every s-exponent is even",
    "slice_events":
        "cup(i)/cap(i) create/annihilate strands i,i+1; xp/xn are crossings "
        "of strands i,i+1 with the stored sign taken relative to component "
        "orientations",
    "crossing_sign":
        "for slot directions dL,dR (+1 up) and sign e, the left strand "
        "passes over iff e*dL*dR > 0; braid generator s_i is xp with all "
        "strands upward",
    "pretzel_positive":
        "positive tassel parameters are right-handed vertical half-twists "
        "(each crossing left-strand-over in the row-sweep slice word), "
        "tassels ordered left to right",
    "component_order":
        "components are ordered by first segment creation while tracing; "
        "labels default to 1,2,3,...",
    "theta_layout":
        "theta tangles list edges e1,e2,e3 left to right at the bottom "
        "vertex; cycles c1 = e1+e2, c2 = e2+e3 bound faces, c0 = e1+e3 is "
        "outermost; boundary pushoffs hug the cycle's own face",
    "r_matrix":
        "fundamental sl(N) braiding: Rhat(e_i,e_j) = s[i=j]*(e_i,e_j) + "
        "(e_j,e_i)[i<j] + ((e_j,e_i)+(s-1/s)(e_i,e_j))[i>j]; Hecke relation "
        "(Rhat - s)(Rhat + 1/s) = 0; quantum trace weights mu_i = s^(N+1-2i)",
    "framing":
        "curl scalars are measured by evaluating curl diagrams, never from "
        "twist-exponent formulas; normalized invariants divide by "
        "curl^writhe",
    "hecke":
        "H_r generators satisfy (T - s)(T + 1/s) = 0; Jucys-Murphy elements "
        "J_k = T_{k-1}...T_1^2...T_{k-1} act on the seminormal basis with "
        "eigenvalue s^(2*content)",
    "surface_twists":
        "band twist integers count full right-handed twists; half-twist "
        "flags y in {-1,0,1} add one extra half twist of that handedness "
        "at the top end of the band (documented guess; see README)",
    "schema_version": "1",
}


def ledger_hash() -> str:
    """Stable fingerprint of the convention ledger."""
    blob = json.dumps(CONVENTIONS, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]
