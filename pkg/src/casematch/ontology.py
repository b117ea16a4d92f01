"""Rooted tree of semantic labels with subsumption tests."""

from __future__ import annotations

from .errors import InputError

ROOT = "Top"


class Ontology:
    """Immutable single-parent hierarchy of semantic labels rooted at ``Top``.

    Parameters
    ----------
    edges : dict
        Mapping ``child -> parent``. The root never appears as a key.
    """

    def __init__(self, edges):
        self._parent = dict(edges)
        self.root = ROOT
        self._validate()
        self._depth = {ROOT: 0}
        for label in self._parent:
            self._depth_of(label)

    def _validate(self):
        if ROOT in self._parent:
            raise InputError(f"{ROOT} cannot have a parent", token=ROOT)
        known = set(self._parent) | {ROOT}
        for child, parent in self._parent.items():
            if parent not in known:
                raise InputError("unknown parent label", token=parent)
        for start in self._parent:
            seen = set()
            node = start
            while node != ROOT:
                if node in seen:
                    raise InputError("cycle in ontology", token=start)
                seen.add(node)
                node = self._parent[node]

    def _depth_of(self, label):
        chain = []
        node = label
        while node not in self._depth:
            chain.append(node)
            node = self._parent[node]
        depth = self._depth[node]
        for node in reversed(chain):
            depth += 1
            self._depth[node] = depth
        return self._depth[label]

    @property
    def labels(self):
        return frozenset(self._depth)

    def __contains__(self, label):
        return label in self._depth

    def __len__(self):
        return len(self._depth)

    def __repr__(self):
        return f"Ontology(n_labels={len(self)})"

    def parent(self, label):
        self._check(label)
        return self._parent.get(label)

    def depth(self, label):
        self._check(label)
        return self._depth[label]

    def ancestors(self, label):
        """Labels on the path from ``label`` up to the root, inclusive."""
        self._check(label)
        out = [label]
        while label != ROOT:
            label = self._parent[label]
            out.append(label)
        return out

    def _check(self, label):
        if label not in self._depth:
            raise KeyError(f"unknown semantic label {label!r}")

    def subsumes(self, ancestor, descendant):
        """True iff ``ancestor`` lies on ``descendant``'s parent chain (inclusive)."""
        self._check(ancestor)
        self._check(descendant)
        steps = self._depth[descendant] - self._depth[ancestor]
        if steps < 0:
            return False
        node = descendant
        for _ in range(steps):
            node = self._parent[node]
        return node == ancestor

    def to_text(self):
        lines = [f"{child} {parent}" for child, parent in sorted(self._parent.items())]
        return "\n".join(lines) + ("\n" if lines else "")


def load_ontology(source, filename=None):
    """Parse ``child parent`` lines into an :class:`Ontology`.

    Parents may be defined after they are first referenced; anything still
    undefined once the whole input is read is an error.
    """
    edges = {}
    first_seen = {}
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError("expected 'child parent'", filename, lineno, line)
        child, parent = parts
        if child == ROOT:
            raise InputError(f"{ROOT} cannot appear as a child", filename, lineno, child)
        if child in edges:
            raise InputError("duplicate child", filename, lineno, child)
        edges[child] = parent
        first_seen.setdefault(parent, lineno)
        first_seen[child] = lineno

    known = set(edges) | {ROOT}
    for child, parent in edges.items():
        if parent not in known:
            raise InputError("unknown parent label", filename, first_seen[parent], parent)
    try:
        return Ontology(edges)
    except InputError as exc:
        line = first_seen.get(exc.token)
        raise InputError(exc.message, filename, line, exc.token) from None


def subsumes(ancestor, descendant, ontology):
    return ontology.subsumes(ancestor, descendant)
