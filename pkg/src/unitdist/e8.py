"""The 240 shortest E8 lattice vectors, the Gosset graph on them, and the
greedy alpha-preserving point augmentation.

The base graph lives on the 240 integer vectors of squared norm 8: the 112
coordinate-pair vectors (two entries +-2, the rest 0) and the 128 all +-1
vectors with an even number of minus signs. Adjacency is squared Euclidean
distance 16; since all vertices share squared norm 8, two roots are adjacent
exactly when they are orthogonal.

The augmentation walks a pool of integer points of squared norm <= 16 and
keeps every point whose addition leaves the independence number unchanged,
which only ever improves the ratio bound ceil(|V|/alpha).
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from math import isqrt

from .core import (
    BoundReport,
    Graph,
    PointCloud,
    VertexSet,
    graph_from_points,
    induced_subgraph,
    ratio_lower_bound,
    sq_dist,
)
from .solve import (
    MisResult,
    SolveOptions,
    _complement_rows,
    _max_clique_masks,
    max_independent_set,
)

Vec = tuple[int, ...]

GOSSET_BASE_NAME = "gosset-240"
GOSSET_ADJ_SQ_DIST = 16  # adjacency: squared Euclidean distance between roots
BALL_SQ_RADIUS = 16      # candidate pool: integer points x with |x|^2 <= 16


class CertificateError(ValueError):
    """A certificate check failed; names the first violated condition."""

    def __init__(self, condition: str, detail: str):
        self.condition = condition
        self.detail = detail
        super().__init__(f"{condition}: {detail}")


def _is_pair_type(v: Vec) -> bool:
    nonzero = [c for c in v if c != 0]
    return len(nonzero) == 2 and all(abs(c) == 2 for c in nonzero)


def _is_sign_type(v: Vec) -> bool:
    return all(abs(c) == 1 for c in v) and sum(1 for c in v if c < 0) % 2 == 0


@dataclass(frozen=True)
class RootSet:
    """The 240 shortest E8 vectors: 112 pair-type plus 128 sign-type."""

    roots: tuple[Vec, ...]

    def __post_init__(self):
        pair = sum(1 for v in self.roots if _is_pair_type(v))
        sign = sum(1 for v in self.roots if _is_sign_type(v))
        if len(self.roots) != 240 or pair != 112 or sign != 128:
            raise ValueError(
                f"not a full root set: {len(self.roots)} vectors, "
                f"{pair} pair-type, {sign} sign-type")
        if len(set(self.roots)) != 240:
            raise ValueError("duplicate root")
        for v in self.roots:
            if sum(c * c for c in v) != 8:
                raise ValueError(f"root {v} has squared norm != 8")


def gosset_roots() -> RootSet:
    """All 240 roots: pair-type in lexicographic order, then sign-type."""
    pair_type = []
    for i, j in combinations(range(8), 2):
        for si in (-2, 2):
            for sj in (-2, 2):
                v = [0] * 8
                v[i], v[j] = si, sj
                pair_type.append(tuple(v))
    sign_type = []
    for bits in range(256):
        v = tuple(-1 if (bits >> k) & 1 else 1 for k in range(8))
        if sum(1 for c in v if c < 0) % 2 == 0:
            sign_type.append(v)
    return RootSet(tuple(sorted(pair_type)) + tuple(sorted(sign_type)))


def build_g0() -> tuple[Graph, PointCloud]:
    """The Gosset graph: the 240 roots, adjacent at squared distance 16."""
    roots = gosset_roots().roots
    cloud = PointCloud(8, roots, GOSSET_ADJ_SQ_DIST)
    return graph_from_points(cloud, name=GOSSET_BASE_NAME), cloud


@dataclass(frozen=True)
class CandidatePool:
    """Integer points of bounded squared norm, in a fixed iteration order."""

    points: tuple[Vec, ...]
    sq_radius: int
    order: str = "lex"


def enumerate_ball(sq_radius: int = BALL_SQ_RADIUS, dim: int = 8) -> CandidatePool:
    """Every integer vector of squared norm <= sq_radius, lexicographic order."""
    if sq_radius < 0:
        raise ValueError("negative squared radius")
    bound = isqrt(sq_radius)
    points: list[Vec] = []
    prefix = [0] * dim

    def rec(position: int, budget: int) -> None:
        if position == dim:
            points.append(tuple(prefix))
            return
        top = isqrt(budget)
        for c in range(-min(bound, top), min(bound, top) + 1):
            prefix[position] = c
            rec(position + 1, budget - c * c)
        prefix[position] = 0

    rec(0, sq_radius)
    return CandidatePool(tuple(points), sq_radius)


@dataclass(frozen=True)
class AugmentationState:
    """Current graph, its exact independence number, and the audit trail."""

    cloud: PointCloud
    graph: Graph
    alpha: int
    added: tuple[Vec, ...]
    rejected_count: int
    candidates_tested: int
    termination: str  # "pool_exhausted" | "budget_candidates" | "budget_accepted" | "budget_time"
    nodes_explored: int


def _neighbor_mask(cloud: PointCloud, x: Vec) -> int:
    mask = 0
    target = cloud.adjacency_sq_dist
    for i, p in enumerate(cloud.points):
        if sq_dist(p, x) == target:
            mask |= 1 << i
    return mask


def _extend(cloud: PointCloud, graph: Graph, x: Vec, nbr_mask: int) -> tuple[PointCloud, Graph]:
    n = graph.n
    adj = [graph.adj[v] | (((nbr_mask >> v) & 1) << n) for v in range(n)]
    adj.append(nbr_mask)
    new_cloud = PointCloud(cloud.dim, cloud.points + (x,), cloud.adjacency_sq_dist)
    return new_cloud, Graph(n + 1, tuple(adj), graph.name)


def _alpha_after_adding(graph: Graph, cloud: PointCloud, alpha: int, x: Vec,
                        options: SolveOptions) -> tuple[int, int, int]:
    """(alpha of graph+x, x's neighbor mask, solver nodes).

    alpha(G + x) = max(alpha(G), 1 + alpha(G restricted to non-neighbors of x)),
    so one induced MIS call on the non-neighbor subgraph decides the step. The
    virtual incumbent alpha-1 makes the call a pure refutation when the value
    is preserved.
    """
    nbr = _neighbor_mask(cloud, x)
    non_nbr = graph.full_mask & ~nbr
    sub, _ = induced_subgraph(graph, VertexSet(graph.n, non_nbr))
    value, _, nodes, status, _ = _max_clique_masks(
        _complement_rows(sub), sub.n, initial_best=alpha - 1, options=options)
    if status != "complete":
        raise TimeoutError(f"solver budget exhausted while testing point {x}")
    if value <= alpha - 1:
        return alpha, nbr, nodes
    return 1 + value, nbr, nodes


def addition_preserves_alpha(state: AugmentationState, x: Vec,
                             options: SolveOptions | None = None) -> tuple[bool, int]:
    """Would adding x keep the independence number unchanged?

    Returns (preserved, alpha of the would-be graph). x must not already be a
    vertex of the current graph.
    """
    if x in set(state.cloud.points):
        raise ValueError(f"point {x} is already a vertex")
    new_alpha, _, _ = _alpha_after_adding(
        state.graph, state.cloud, state.alpha, x, options or SolveOptions())
    return (new_alpha == state.alpha, new_alpha)


def initial_state(graph: Graph, cloud: PointCloud,
                  options: SolveOptions | None = None) -> AugmentationState:
    """Augmentation state for a base graph, solving its alpha exactly."""
    res = max_independent_set(graph, options or SolveOptions())
    if not isinstance(res, MisResult):
        raise TimeoutError("solver budget exhausted while computing base alpha")
    return AugmentationState(cloud, graph, res.alpha, (), 0, 0,
                             "pool_exhausted", res.nodes_explored)


def augment_greedy(state: AugmentationState, pool, *,
                   max_candidates: int | None = None,
                   max_accepted: int | None = None,
                   time_budget: float | None = None,
                   skip_isolated: bool = False,
                   options: SolveOptions | None = None,
                   log=None) -> AugmentationState:
    """Accept every pool point, in pool order, whose addition preserves alpha.

    Points already in the graph are skipped without consuming budget. With
    skip_isolated, points with no neighbor in the current graph are rejected
    without a solver call (they would necessarily raise alpha anyway whenever
    alpha >= 1). Budget exhaustion terminates the walk with a termination tag
    distinct from "pool_exhausted".
    """
    opts = options or SolveOptions()
    points = pool.points if isinstance(pool, CandidatePool) else tuple(pool)
    deadline = (time.monotonic() + time_budget) if time_budget else None

    cloud, graph, alpha = state.cloud, state.graph, state.alpha
    added = list(state.added)
    rejected = state.rejected_count
    tested = state.candidates_tested
    nodes = state.nodes_explored
    present = set(cloud.points)
    termination = "pool_exhausted"

    for x in points:
        if x in present:
            continue
        if max_candidates is not None and tested >= max_candidates:
            termination = "budget_candidates"
            break
        if max_accepted is not None and len(added) - len(state.added) >= max_accepted:
            termination = "budget_accepted"
            break
        if deadline is not None and time.monotonic() > deadline:
            termination = "budget_time"
            break
        tested += 1
        nbr = _neighbor_mask(cloud, x)
        if skip_isolated and nbr == 0:
            rejected += 1
            if log:
                log(x, False, alpha)
            continue
        new_alpha, nbr, step_nodes = _alpha_after_adding(graph, cloud, alpha, x, opts)
        nodes += step_nodes
        if new_alpha == alpha:
            cloud, graph = _extend(cloud, graph, x, nbr)
            present.add(x)
            added.append(x)
            if log:
                log(x, True, alpha)
        else:
            # rejection leaves the graph, and therefore the running alpha, unchanged
            rejected += 1
            if log:
                log(x, False, alpha)

    return AugmentationState(cloud, graph, alpha, tuple(added), rejected,
                             tested, termination, nodes)


@dataclass(frozen=True)
class Certificate:
    """Claimed alpha-preserving extension of a named base graph.

    The verifier recomputes every claim from scratch, so a Certificate object
    itself carries no guarantee; see verify_certificate.
    """

    base: str
    points: tuple[Vec, ...]
    claimed_alpha: int
    claimed_chi_lower: int


def shipped_certificate() -> Certificate:
    """The 49-point extension of the Gosset graph shipped with the package."""
    from .formats import parse_certificate
    text = resources.files("unitdist.data").joinpath("gosset-ext-49.cert").read_text()
    return parse_certificate(text)


def verify_certificate(cert: Certificate,
                       options: SolveOptions | None = None) -> BoundReport:
    """Recompute every claim of a certificate from first principles.

    Checks, in order: the base is known, the claimed ratio arithmetic is
    consistent, every point is an integer vector inside the ball, no point
    duplicates a base vertex or another certificate point, the recomputed
    independence number matches, and the ratio bound matches. Raises
    CertificateError naming the first violated condition.
    """
    opts = options or SolveOptions()
    if cert.base != GOSSET_BASE_NAME:
        raise CertificateError("unknown-base", f"cannot resolve base {cert.base!r}")
    base_graph, base_cloud = build_g0()
    n_total = base_graph.n + len(cert.points)
    if cert.claimed_alpha < 1:
        raise CertificateError("bad-alpha", f"claimed alpha {cert.claimed_alpha}")
    expected_ratio = ratio_lower_bound(n_total, cert.claimed_alpha)
    if cert.claimed_chi_lower != expected_ratio:
        raise CertificateError(
            "ratio-arithmetic",
            f"claimed chi_lower {cert.claimed_chi_lower} != "
            f"ceil({n_total}/{cert.claimed_alpha}) = {expected_ratio}")
    base_points = set(base_cloud.points)
    seen: set[Vec] = set()
    for x in cert.points:
        if len(x) != 8:
            raise CertificateError("bad-point", f"{x} is not an 8-vector")
        if sum(c * c for c in x) > BALL_SQ_RADIUS:
            raise CertificateError(
                "outside-ball", f"{x} has squared norm > {BALL_SQ_RADIUS}")
        if x in base_points:
            raise CertificateError("duplicate-vertex", f"{x} is already a base vertex")
        if x in seen:
            raise CertificateError("duplicate-vertex", f"{x} listed twice")
        seen.add(x)
    cloud = PointCloud(8, base_cloud.points + cert.points, GOSSET_ADJ_SQ_DIST)
    graph = graph_from_points(cloud, name=f"{cert.base}+{len(cert.points)}")
    res = max_independent_set(graph, opts)
    if not isinstance(res, MisResult):
        raise CertificateError(
            "budget", f"solver budget exhausted at bracket "
                      f"[{res.lower_bound}, {res.upper_bound}]")
    if res.alpha != cert.claimed_alpha:
        raise CertificateError(
            "alpha-mismatch",
            f"recomputed alpha {res.alpha} != claimed {cert.claimed_alpha}")
    bound = ratio_lower_bound(graph.n, res.alpha)
    if bound != cert.claimed_chi_lower:
        raise CertificateError(
            "ratio-mismatch",
            f"recomputed bound {bound} != claimed {cert.claimed_chi_lower}")
    return BoundReport(graph_name=graph.name, n_vertices=graph.n,
                       alpha=res.alpha, chi_lower=bound)


def rational_rescale_check(cloud: PointCloud) -> bool:
    """Whether rescaling to unit adjacency distance keeps coordinates rational.

    True iff the squared adjacency distance is a perfect square: dividing all
    integer coordinates by its integer square root then realizes the graph at
    unit distance with rational coordinates.
    """
    d = cloud.adjacency_sq_dist
    return isqrt(d) ** 2 == d
