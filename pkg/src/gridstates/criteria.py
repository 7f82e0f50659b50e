"""Degree criteria for the four grid-state interpretations, hybrid-class
classification, and the applicability gates in front of each criterion."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .graphs import EdgeKind, GridGraph, Hypergraph, bipartition_of, hypergraph_to_graph, signed_coloring
from .linalg import degree_matrix
from .states import DEFAULT_PPT_TOL, PptVerdict, ZeroTraceError, density_of_graph, density_of_hypergraph, ppt_verdict


class InterpretationError(Exception):
    pass


class HybridClass(Enum):
    PURE_L = "PureL"
    PURE_Q = "PureQ"
    NOI = "NOI"
    COI = "COI"
    GI = "GI"


@dataclass(frozen=True)
class CriterionReport:
    interpretation: str
    applicable: bool
    degree_equal: bool
    implied_verdict: str
    details: str
    ppt: Optional[PptVerdict] = None


def degree_equal(g: GridGraph) -> bool:
    """Exact comparison of the degree matrices of a graph and its transpose."""
    return degree_matrix(g) == degree_matrix(g.partial_transpose())


def classify_hybrid(g: GridGraph) -> HybridClass:
    """Most specific incidence class of a graph's L- and Q-edges.

    NOI and COI both need a bipartite Q-subgraph; COI additionally lets
    L-edges live inside a partition (per-component flips of the Q-bipartition
    are allowed, which is what the signed colouring solves for).  Everything
    else is GI.  An edgeless graph counts as pure-L.
    """
    has_l = any(e.kind is EdgeKind.L for e in g.edges)
    has_q = any(e.kind is EdgeKind.Q for e in g.edges)
    if not has_q:
        return HybridClass.PURE_L
    if not has_l:
        return HybridClass.PURE_Q
    if bipartition_of(g, "q") is None:
        return HybridClass.GI
    q_vertices = {v for e in g.q_edges for v in e.pair}
    l_vertices = {v for e in g.l_edges for v in e.pair}
    if not (q_vertices & l_vertices):
        return HybridClass.NOI
    if signed_coloring(g) is not None:
        return HybridClass.COI
    return HybridClass.GI


def _hybrid_gate(gt: GridGraph) -> bool:
    cls = classify_hybrid(gt)
    if cls in (HybridClass.NOI, HybridClass.COI, HybridClass.PURE_L):
        return True
    if cls is HybridClass.PURE_Q:
        return bipartition_of(gt, "all") is not None
    return False


def _small_system_note(g: GridGraph, is_ppt: bool) -> str:
    dims = tuple(sorted((g.m, g.n)))
    word = "separable" if is_ppt else "entangled"
    return f"PPT is decisive at {dims[0]}x{dims[1]}: the state is {word}."


def criterion_report(g: GridGraph, interpretation: str) -> CriterionReport:
    """Degree-criterion report for the L, Q, or hybrid reading of a graph.

    The applicability gate depends on the interpretation: the L criterion
    always applies, the Q criterion needs a bipartite transpose, and the
    hybrid criterion needs the transpose to fall in a class with a signed
    kernel indicator (NOI, COI, or a degenerate pure case).
    """
    if interpretation not in ("L", "Q", "hybrid"):
        raise InterpretationError(f"unknown interpretation {interpretation!r}")
    if interpretation == "L" and g.q_edges:
        raise InterpretationError("L interpretation rejects graphs with Q-edges")
    if interpretation == "Q" and g.l_edges:
        raise InterpretationError("Q interpretation rejects graphs with L-edges")

    gt = g.partial_transpose()
    if interpretation == "L":
        applicable = True
        gate_note = "L criterion always applies"
    elif interpretation == "Q":
        applicable = bipartition_of(gt, "all") is not None
        gate_note = "transpose is bipartite" if applicable else "transpose is not bipartite"
    else:
        applicable = _hybrid_gate(gt)
        gate_note = (
            f"transpose class {classify_hybrid(gt).value} is inside the hybrid gate"
            if applicable
            else f"transpose class {classify_hybrid(gt).value} is outside the hybrid gate"
        )

    deg_eq = degree_equal(g)
    if deg_eq:
        verdict = "PPT-certified"
    elif applicable:
        verdict = "entangled-by-degree"
    else:
        verdict = "inapplicable"

    details = [gate_note, f"degrees {'match' if deg_eq else 'differ'} under partial transpose"]
    ppt: Optional[PptVerdict] = None
    if {g.m, g.n} and sorted((g.m, g.n))[0] == 2 and sorted((g.m, g.n))[1] <= 3 and g.edges:
        ppt = ppt_verdict(density_of_graph(g), DEFAULT_PPT_TOL)
        details.append(_small_system_note(g, ppt.is_ppt))
    return CriterionReport(
        interpretation=interpretation,
        applicable=applicable,
        degree_equal=deg_eq,
        implied_verdict=verdict,
        details="; ".join(details),
        ppt=ppt,
    )


def hypergraph_criterion_report(h: Hypergraph) -> CriterionReport:
    """Degree-criterion report for a hypergraph via its clique-expansion graph.

    The degree condition here is only necessary for separability; matching
    degrees do not certify a positive partial transpose, so a numeric PPT
    verdict is always attached in place of that direction.
    """
    g = hypergraph_to_graph(h)
    gt = g.partial_transpose()
    applicable = bipartition_of(gt, "all") is not None
    deg_eq = degree_equal(g)
    if applicable and not deg_eq:
        verdict = "entangled-by-degree"
    elif deg_eq:
        verdict = "inapplicable-for-PPT-direction"
    else:
        verdict = "inapplicable"
    try:
        ppt = ppt_verdict(density_of_hypergraph(h), DEFAULT_PPT_TOL)
        ppt_note = f"numeric PPT verdict: min eigenvalue {ppt.min_eig:.3g}"
    except ZeroTraceError:
        ppt = None
        ppt_note = "no hyperedges, no density matrix"
    gate_note = (
        "clique-expansion transpose is bipartite" if applicable else "clique-expansion transpose is not bipartite"
    )
    details = [
        gate_note,
        f"degrees {'match' if deg_eq else 'differ'} under partial transpose",
        "matching degrees do not certify PPT for hypergraph states",
        ppt_note,
    ]
    return CriterionReport(
        interpretation="hypergraph",
        applicable=applicable,
        degree_equal=deg_eq,
        implied_verdict=verdict,
        details="; ".join(details),
        ppt=ppt,
    )
