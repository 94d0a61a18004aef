"""Interconnection schemes that preserve single-input controllability.

Three constructions live here, each with a theorem-backed predicate that the
test suite cross-checks against the exact Kalman oracle:

* composite graphs: k1 copies of a cell graph wired through one designated
  cell vertex s, so that those vertices alone form the structure graph; at
  the Laplacian level this is I (x) L2 + L1 (x) e_s e_s^T in the copy-major
  vertex order used throughout,
* antiregular chains: blocks in antiregular order, each linked from its
  dominating or terminal vertex into the next block's degree-repeating
  vertex, optionally finished with a dangling path,
* path appending: a path attached to any vertex of any graph.

Also here: the C_j arithmetic classes that decide where a path may be
driven from, and the block-1 input predicate for chains.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .graph_core import (Graph, gen_antiregular, graph_from_json, is_connected,
                         laplacian)
from .controllability import Verdict, input_vector, kalman_rank_exact
from .spectral import antiregular_spectrum, default_gtol, eig_sym

__all__ = [
    "HypothesisNotMet",
    "OutOfSupport",
    "CompositeSpec",
    "ChainSpec",
    "composite",
    "composite_modal",
    "predict_composite",
    "cj_index",
    "cj_contains",
    "path_split_controllable",
    "chain_antiregular",
    "valid_chain_input",
    "append_path",
    "composite_spec_to_json",
    "composite_spec_from_json",
    "chain_spec_to_json",
    "chain_spec_from_json",
]


class HypothesisNotMet(ValueError):
    """A theorem-based prediction was asked outside the theorem's hypotheses."""


class OutOfSupport(ValueError):
    """The chain input theorem says nothing about this control vector."""


# ---------------------------------------------------------------------------
# composite graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompositeSpec:
    """Structure graph, cell graph, and the composite vertex s of the cell."""

    structure: Graph
    cell: Graph
    s: int

    def __post_init__(self) -> None:
        if not 1 <= self.s <= self.cell.n:
            raise ValueError(f"composite vertex {self.s} out of range 1..{self.cell.n}")
        if not is_connected(self.structure) or not is_connected(self.cell):
            raise ValueError("structure and cell must both be connected")


def composite(spec: CompositeSpec) -> Graph:
    """Composite graph on k1*k2 vertices in copy-major order.

    Copy i of the cell occupies indices (i-1)k2+1 .. i*k2; every structure
    edge {i, j} becomes an edge between the composite vertices of copies i
    and j. The Laplacian of the result equals
    I (x) L_cell + L_structure (x) e_s e_s^T exactly.
    """
    k1, k2 = spec.structure.n, spec.cell.n
    edges = []
    for i in range(k1):
        off = i * k2
        edges.extend((off + u, off + v) for u, v in spec.cell.edges)
    edges.extend(((i - 1) * k2 + spec.s, (j - 1) * k2 + spec.s)
                 for i, j in spec.structure.edges)
    return Graph.from_edges(k1 * k2, edges)


def composite_modal(spec: CompositeSpec) -> list[tuple[float, np.ndarray]]:
    """All k1*k2 eigenpairs of the composite Laplacian, built blockwise.

    For each structure eigenpair (lam_i, v_i), the matrix
    L_cell + lam_i e_s e_s^T is diagonalized; each of its eigenpairs
    (mu, u) yields the composite eigenpair (mu, v_i (x) u). Pairs are
    returned in (i, cell-eigenvalue) order and form an orthogonal set.
    """
    k2 = spec.cell.n
    L2 = laplacian(spec.cell).astype(float)
    dec1 = eig_sym(laplacian(spec.structure))
    es = np.zeros((k2, k2))
    es[spec.s - 1, spec.s - 1] = 1.0
    pairs: list[tuple[float, np.ndarray]] = []
    for i in range(spec.structure.n):
        v_i = dec1.modal[:, i]
        dec_i = eig_sym(L2 + dec1.values[i] * es)
        for j in range(k2):
            pairs.append((float(dec_i.values[j]), np.kron(v_i, dec_i.modal[:, j])))
    return pairs


def predict_composite(spec: CompositeSpec, w: int) -> Verdict:
    """Theorem-based verdict for the composite driven at copy w's vertex s.

    Requires the cell to be single-input controllable at s (checked with the
    exact oracle; HypothesisNotMet otherwise). Given that, the composite is
    controllable at input index (w-1)k2+s exactly when the structure is
    controllable at w, so the verdict is the structure's own, relabeled.
    """
    k1, k2 = spec.structure.n, spec.cell.n
    if not 1 <= w <= k1:
        raise ValueError(f"structure vertex {w} out of range 1..{k1}")
    cell_rank = kalman_rank_exact(laplacian(spec.cell), input_vector(k2, [spec.s]))
    if cell_rank < k2:
        raise HypothesisNotMet(
            f"cell is not single-input controllable at vertex {spec.s} "
            f"(Kalman rank {cell_rank} of {k2})")
    rank = kalman_rank_exact(laplacian(spec.structure), input_vector(k1, [w]))
    return Verdict(controllable=(rank == k1), method="exact",
                   input_vertex=(w - 1) * k2 + spec.s)


# ---------------------------------------------------------------------------
# C_j classes and path splits
# ---------------------------------------------------------------------------

def cj_contains(j: int, m: int) -> bool:
    """Membership of m in C_j = {j, j+(2j+1), j+2(2j+1), ...}."""
    if j < 1:
        raise ValueError("class index must be >= 1")
    return m >= j and (m - j) % (2 * j + 1) == 0


def cj_index(m: int) -> int | None:
    """Smallest j with m in C_j, or None for m = 0.

    Classes overlap (7 sits in both C_1 and C_2), so this is the least
    index, not the only one; use cj_contains to test a specific class.
    """
    if m < 0:
        raise ValueError("side length must be nonnegative")
    if m == 0:
        return None
    for j in range(1, m + 1):
        if cj_contains(j, m):
            return j
    raise AssertionError("unreachable: m is always in C_m")


def path_split_controllable(k11: int, k12: int) -> bool:
    """Whether an input splitting a path into sides of k11 and k12 vertices
    controls it: true iff no single class C_j contains both side lengths."""
    if k11 < 0 or k12 < 0:
        raise ValueError("side lengths must be nonnegative")
    for j in range(1, min(k11, k12) + 1):
        if cj_contains(j, k11) and cj_contains(j, k12):
            return False
    return True


# ---------------------------------------------------------------------------
# antiregular chains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainSpec:
    """c antiregular blocks of order k2, one link choice per junction,
    plus an optional dangling path (tail) on block 1.

    links[i] says which vertex of block i+1 feeds junction i+1: "D" for the
    dominating vertex, "T" for the terminal one. The junction always lands
    on the next block's degree-repeating vertex ceil(k2/2). tail_attach
    defaults to that same vertex of block 1.
    """

    c: int
    k2: int
    links: tuple[str, ...] = ()
    tail: int = 0
    tail_attach: int | None = None

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError("chain needs at least one block")
        if self.k2 < 2:
            raise ValueError("blocks need at least two vertices")
        normalized = []
        for raw in self.links:
            tag = str(raw)[:1].upper()
            if tag not in ("D", "T"):
                raise ValueError(f"links must be Dominating or Terminal, got {raw!r}")
            normalized.append(tag)
        object.__setattr__(self, "links", tuple(normalized))
        if len(self.links) != self.c - 1:
            raise ValueError(f"need {self.c - 1} links for {self.c} blocks, got {len(self.links)}")
        if self.tail < 0:
            raise ValueError("tail length must be nonnegative")
        if self.tail_attach is None:
            object.__setattr__(self, "tail_attach", self.kappa)
        if not 1 <= self.tail_attach <= self.k2:
            raise ValueError(f"tail_attach {self.tail_attach} out of range 1..{self.k2}")

    @property
    def kappa(self) -> int:
        """Index of the first degree-repeating vertex of a block: ceil(k2/2)."""
        return (self.k2 + 1) // 2


def chain_antiregular(spec: ChainSpec) -> Graph:
    """Chain of c antiregular blocks, plus the spec's tail when present.

    Block i occupies indices (i-1)k2+1 .. i*k2 in antiregular vertex order.
    Junction i contributes one edge into block (i+1)'s degree-repeating
    vertex (global index i*k2 + kappa), leaving from block i's dominating
    vertex ((i-1)k2 + 1) on a "D" link or its terminal vertex (i*k2) on a
    "T" link. Each junction edge is exactly the rank-one Laplacian update
    z z^T with z the difference of the two endpoint indicators, so the
    Laplacian of the untailed chain is I (x) L_block + sum_i z_i z_i^T.
    """
    block = gen_antiregular(spec.k2)
    edges = []
    for i in range(spec.c):
        off = i * spec.k2
        edges.extend((off + u, off + v) for u, v in block.edges)
    for i, link in enumerate(spec.links, start=1):
        into = i * spec.k2 + spec.kappa
        out = (i - 1) * spec.k2 + 1 if link == "D" else i * spec.k2
        edges.append((out, into))
    g = Graph.from_edges(spec.c * spec.k2, edges)
    if spec.tail:
        g = append_path(g, spec.tail_attach, spec.tail)
    return g


def valid_chain_input(spec: ChainSpec, b) -> bool:
    """Input predicate for a single binary input into block 1 of a chain.

    Evaluates the untailed chain on c*k2 vertices (the tail fields of the
    spec are ignored here). The vector must vanish outside block 1; the
    predicate is silent about other inputs, so those raise OutOfSupport.
    When the first junction leaves from the terminal vertex, the predicate
    also restricts block 1's k2-th entry to zero, and a 1 there is likewise
    out of reach. Within its domain, the base condition is that entries
    kappa and kappa+1 of the block-1 part sum to exactly 1 (an index past
    the restricted support counts as 0).

    The base condition alone over-predicts in one situation. Chain
    eigenvectors whose eigenvalue is not a block eigenvalue carry the
    block-1 pattern [(1-m)c, c, ..., c] (up to the k2-th entry, which the
    terminal variant keeps out of the input's support); such a vector
    annihilates an input with a set first entry exactly when the eigenvalue
    equals the input's popcount. With small blocks the chain spectrum can
    actually contain that integer: a 6-vertex path arises as a two-vertex
    chain with mixed junctions and has eigenvalues 1 and 2. The predicate
    therefore also requires, when the first entry of b is 1, that no chain
    eigenvalue matches popcount(b) outside the block spectrum. The one
    exception is a two-vertex block whose first junction leaves from the
    terminal vertex: there the pattern above degenerates (its first two
    entries need not be proportional to (1-m) and 1), the screen would
    misfire, and the base condition alone is the correct test.
    """
    vec = np.asarray(b).ravel()
    n = spec.c * spec.k2
    if vec.shape != (n,):
        raise ValueError(f"expected a length-{n} vector, got shape {np.asarray(b).shape}")
    as_int = vec.astype(np.int64)
    if not (vec.astype(float) == as_int).all() or not np.isin(as_int, (0, 1)).all():
        raise ValueError("control vector entries must be 0 or 1")
    if not as_int.any():
        raise ValueError("control vector must have at least one nonzero entry")
    if as_int[spec.k2:].any():
        raise OutOfSupport("input reaches outside block 1; the theorem does not cover it")
    block1 = as_int[:spec.k2]
    if spec.links and spec.links[0] == "T" and block1[spec.k2 - 1]:
        raise OutOfSupport(
            "terminal-linked chain: the theorem covers only inputs with a "
            "zero k2-th entry in block 1")
    kap = spec.kappa
    if int(block1[kap - 1]) + int(block1[kap]) != 1:
        return False
    screened = spec.c > 1 and not (spec.k2 == 2 and spec.links[0] == "T")
    if block1[0] and screened:
        ones = int(block1.sum())
        if ones not in antiregular_spectrum(spec.k2):
            bare = ChainSpec(c=spec.c, k2=spec.k2, links=spec.links)
            dec = eig_sym(laplacian(chain_antiregular(bare)))
            gtol = default_gtol(dec.values)
            if bool(np.any(np.abs(dec.values - ones) <= gtol)):
                return False
    return True


def append_path(g: Graph, v: int, m: int) -> Graph:
    """Attach a dangling m-vertex path at vertex v.

    Path vertices take indices |g|+1 .. |g|+m, nearest first, so the far end
    of the path is the last vertex. m = 0 returns g unchanged.
    """
    if not 1 <= v <= g.n:
        raise ValueError(f"vertex {v} out of range 1..{g.n}")
    if m < 0:
        raise ValueError("path length must be nonnegative")
    if m == 0:
        return g
    edges = list(g.edges)
    edges.append((v, g.n + 1))
    edges.extend((g.n + i, g.n + i + 1) for i in range(1, m))
    return Graph.from_edges(g.n + m, edges)


# ---------------------------------------------------------------------------
# spec serialization
# ---------------------------------------------------------------------------

def composite_spec_to_json(spec: CompositeSpec) -> str:
    payload = {
        "structure": {"n": spec.structure.n,
                      "edges": [[u, v] for u, v in spec.structure.sorted_edges()]},
        "cell": {"n": spec.cell.n,
                 "edges": [[u, v] for u, v in spec.cell.sorted_edges()]},
        "s": spec.s,
    }
    return json.dumps(payload, separators=(", ", ": "))


def composite_spec_from_json(text: str) -> CompositeSpec:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid composite spec JSON: {exc}") from exc
    if not isinstance(payload, dict) or not {"structure", "cell", "s"} <= set(payload):
        raise ValueError('composite spec JSON needs "structure", "cell", "s"')
    structure = graph_from_json(json.dumps(payload["structure"]))
    cell = graph_from_json(json.dumps(payload["cell"]))
    if not isinstance(payload["s"], int) or isinstance(payload["s"], bool):
        raise ValueError('"s" must be an integer')
    return CompositeSpec(structure=structure, cell=cell, s=payload["s"])


def chain_spec_to_json(spec: ChainSpec) -> str:
    payload = {"c": spec.c, "k2": spec.k2, "links": list(spec.links),
               "tail": spec.tail, "tail_attach": spec.tail_attach}
    return json.dumps(payload, separators=(", ", ": "))


def chain_spec_from_json(text: str) -> ChainSpec:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid chain spec JSON: {exc}") from exc
    if not isinstance(payload, dict) or not {"c", "k2", "links"} <= set(payload):
        raise ValueError('chain spec JSON needs "c", "k2", "links"')
    for key in ("c", "k2", "tail", "tail_attach"):
        if key in payload and payload[key] is not None and (
                not isinstance(payload[key], int) or isinstance(payload[key], bool)):
            raise ValueError(f'"{key}" must be an integer')
    return ChainSpec(c=payload["c"], k2=payload["k2"],
                     links=tuple(payload["links"]),
                     tail=payload.get("tail", 0),
                     tail_attach=payload.get("tail_attach"))
