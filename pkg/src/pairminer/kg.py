"""File-backed knowledge graph lookup and pair validation.

nodes.tsv: ``node_id<TAB>name<TAB>category`` with category in
{chemical, disease, other}. edges.tsv: ``subject_id<TAB>predicate<TAB>
object_id``. Lines starting with ``#`` are comments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import DanglingEdge, DuplicateNodeId, MalformedRow
from .models import DrugDiseasePair, ValidationReport, VerifiedPair
from .normalize import normalize_name

CATEGORIES = frozenset({"chemical", "disease", "other"})


@dataclass(frozen=True)
class KGNode:
    node_id: str
    name: str
    category: str


@dataclass(frozen=True)
class KnowledgeGraph:
    nodes: dict[str, KGNode]
    name_index: dict[str, tuple[str, ...]]  # normalized name -> node ids
    adjacency: dict[str, dict[str, frozenset[str]]]  # undirected, id -> id -> predicates


def _rows(path):
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, line.rstrip("\n").split("\t")


def load_kg(nodes_path, edges_path) -> KnowledgeGraph:
    nodes: dict[str, KGNode] = {}
    name_index: dict[str, list[str]] = {}
    for lineno, cols in _rows(nodes_path):
        if len(cols) != 3:
            raise MalformedRow(f"{nodes_path}: line {lineno}: expected 3 columns")
        node_id, name, category = (c.strip() for c in cols)
        if not node_id or not name:
            raise MalformedRow(f"{nodes_path}: line {lineno}: empty node_id or name")
        if category not in CATEGORIES:
            raise MalformedRow(f"{nodes_path}: line {lineno}: unknown category {category!r}")
        if node_id in nodes:
            raise DuplicateNodeId(f"node id {node_id!r} defined more than once")
        nodes[node_id] = KGNode(node_id=node_id, name=name, category=category)
        name_index.setdefault(normalize_name(name), []).append(node_id)

    adjacency: dict[str, dict[str, set[str]]] = {}
    for lineno, cols in _rows(edges_path):
        if len(cols) != 3:
            raise MalformedRow(f"{edges_path}: line {lineno}: expected 3 columns")
        subject_id, predicate, object_id = (c.strip() for c in cols)
        for endpoint in (subject_id, object_id):
            if endpoint not in nodes:
                raise DanglingEdge(f"{edges_path}: line {lineno}: unknown node id {endpoint!r}")
        adjacency.setdefault(subject_id, {}).setdefault(object_id, set()).add(predicate)
        adjacency.setdefault(object_id, {}).setdefault(subject_id, set()).add(predicate)

    frozen = {
        a: {b: frozenset(preds) for b, preds in nbrs.items()}
        for a, nbrs in adjacency.items()
    }
    return KnowledgeGraph(
        nodes=nodes,
        name_index={k: tuple(v) for k, v in name_index.items()},
        adjacency=frozen,
    )


def edge_predicates(kg: KnowledgeGraph, name_a: str, name_b: str) -> tuple[str, ...]:
    """All predicates on edges (either direction) between any node
    named name_a and any node named name_b (normalized names)."""
    preds: set[str] = set()
    for a_id in kg.name_index.get(name_a, ()):
        nbrs = kg.adjacency.get(a_id, {})
        for b_id in kg.name_index.get(name_b, ()):
            preds.update(nbrs.get(b_id, ()))
    return tuple(sorted(preds))


def pair_exists(kg: KnowledgeGraph, drug_norm: str, disease_norm: str) -> bool:
    """True iff some node matching the drug name and some node matching
    the disease name are connected by at least one edge, in either
    direction, under any predicate. Absent names are false, not errors."""
    for a_id in kg.name_index.get(drug_norm, ()):
        nbrs = kg.adjacency.get(a_id, {})
        if any(b_id in nbrs for b_id in kg.name_index.get(disease_norm, ())):
            return True
    return False


def validate(pairs: list[DrugDiseasePair], kg: KnowledgeGraph) -> ValidationReport:
    """Partition deduped pairs by KG edge existence; recall is
    verified/total (0 for an empty input by convention)."""
    verified = []
    unverified = []
    for p in pairs:
        if pair_exists(kg, p.drug_norm, p.disease_norm):
            verified.append(
                VerifiedPair(
                    drug_norm=p.drug_norm,
                    disease_norm=p.disease_norm,
                    predicates=edge_predicates(kg, p.drug_norm, p.disease_norm),
                )
            )
        else:
            unverified.append(p)
    return ValidationReport(
        total=len(pairs),
        verified=len(verified),
        verified_pairs=tuple(verified),
        unverified_pairs=tuple(unverified),
    )
