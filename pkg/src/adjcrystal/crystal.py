"""Abstract crystals, tensor products, signature rule and crystal graphs.

Sign convention used throughout: a factor contributes ``-`` repeated
epsilon_i times followed by ``+`` repeated phi_i times, factors are read left
to right in tensor order, adjacent ``(+, -)`` pairs cancel, e_i acts at the
rightmost surviving ``-`` and f_i at the leftmost surviving ``+``.  On two
factors this is exactly the usual tensor product rule.
"""
from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

from .cartan import ClassicalWeight, pairing, simple_root_cl
from .errors import ConventionError

NEG_INF = float("-inf")

Element = Hashable


class Crystal:
    """Base class for a crystal of type A_n^(1).

    Subclasses implement :meth:`e`, :meth:`f`, :meth:`weight` and :meth:`key`.
    ``epsilon``/``phi`` default to string lengths, which is right for every
    crystal arising from a crystal basis.
    """

    n: int

    @property
    def residues(self) -> range:
        return range(self.n + 1)

    def e(self, i: int, b: Element) -> Element | None:
        raise NotImplementedError

    def f(self, i: int, b: Element) -> Element | None:
        raise NotImplementedError

    def weight(self, b: Element) -> ClassicalWeight:
        raise NotImplementedError

    def key(self, b: Element) -> str:
        return str(b)

    def epsilon(self, i: int, b: Element) -> int | float:
        count = 0
        while (b := self.e(i, b)) is not None:
            count += 1
        return count

    def phi(self, i: int, b: Element) -> int | float:
        count = 0
        while (b := self.f(i, b)) is not None:
            count += 1
        return count

    def epsilon_vector(self, b: Element) -> tuple:
        return tuple(self.epsilon(i, b) for i in self.residues)

    def phi_vector(self, b: Element) -> tuple:
        return tuple(self.phi(i, b) for i in self.residues)


class FiniteCrystal(Crystal):
    """A crystal given by an explicit list of elements and labeled arrows."""

    def __init__(self, n: int, elements: Sequence[Element],
                 arrows: dict[tuple[int, Element], Element],
                 weight: Callable[[Element], ClassicalWeight],
                 key: Callable[[Element], str] = str):
        self.n = n
        self.elements = list(elements)
        self._down = dict(arrows)
        self._up = {}
        for (i, b), b2 in arrows.items():
            if (i, b2) in self._up:
                raise ConventionError(f"two {i}-arrows end at {key(b2)}")
            self._up[(i, b2)] = b
        self._weight = weight
        self._key = key

    def e(self, i, b):
        return self._up.get((i, b))

    def f(self, i, b):
        return self._down.get((i, b))

    def weight(self, b):
        return self._weight(b)

    def key(self, b):
        return self._key(b)

    def arrows(self) -> dict[tuple[int, Element], Element]:
        return dict(self._down)

    def without_arrows(self, drop: Iterable[tuple[int, Element]]) -> FiniteCrystal:
        arrows = dict(self._down)
        for k in drop:
            arrows.pop(k, None)
        return FiniteCrystal(self.n, self.elements, arrows, self._weight, self._key)


class TCrystal(Crystal):
    """T_lambda = {t_lambda}: weight lambda, no arrows, epsilon = phi = -inf."""

    def __init__(self, lam: ClassicalWeight):
        self.n = lam.n
        self.lam = lam
        self.elements = ["t"]

    def e(self, i, b):
        return None

    def f(self, i, b):
        return None

    def epsilon(self, i, b):
        return NEG_INF

    def phi(self, i, b):
        return NEG_INF

    def weight(self, b):
        return self.lam

    def key(self, b):
        return f"t{self.lam.lam}"


class CCrystal(Crystal):
    """C = {c}: weight 0, no arrows, epsilon = phi = 0."""

    def __init__(self, n: int):
        self.n = n
        self.elements = ["c"]

    def e(self, i, b):
        return None

    def f(self, i, b):
        return None

    def epsilon(self, i, b):
        return 0

    def phi(self, i, b):
        return 0

    def weight(self, b):
        return ClassicalWeight.zero(self.n)

    def key(self, b):
        return "c"


def tensor_eps(i: int, c1: Crystal, b1, c2: Crystal, b2):
    return max(c1.epsilon(i, b1), c2.epsilon(i, b2) - pairing(i, c1.weight(b1)))


def tensor_phi(i: int, c1: Crystal, b1, c2: Crystal, b2):
    return max(c2.phi(i, b2), c1.phi(i, b1) + pairing(i, c2.weight(b2)))


class TensorProduct(Crystal):
    """B1 (x) B2 with elements ``(b1, b2)``; nest for longer products."""

    def __init__(self, left: Crystal, right: Crystal):
        if left.n != right.n:
            raise ValueError("tensor factors must share the rank")
        self.n = left.n
        self.left = left
        self.right = right

    @property
    def elements(self):
        return [(b1, b2) for b1 in self.left.elements for b2 in self.right.elements]

    def weight(self, b):
        return self.left.weight(b[0]) + self.right.weight(b[1])

    def epsilon(self, i, b):
        return tensor_eps(i, self.left, b[0], self.right, b[1])

    def phi(self, i, b):
        return tensor_phi(i, self.left, b[0], self.right, b[1])

    def e(self, i, b):
        b1, b2 = b
        if self.left.phi(i, b1) >= self.right.epsilon(i, b2):
            r = self.left.e(i, b1)
            return None if r is None else (r, b2)
        r = self.right.e(i, b2)
        return None if r is None else (b1, r)

    def f(self, i, b):
        b1, b2 = b
        if self.left.phi(i, b1) > self.right.epsilon(i, b2):
            r = self.left.f(i, b1)
            return None if r is None else (r, b2)
        r = self.right.f(i, b2)
        return None if r is None else (b1, r)

    def key(self, b):
        return f"({self.left.key(b[0])})⊗({self.right.key(b[1])})"


# -- signature rule ---------------------------------------------------------

Sign = tuple[str, Any]


def signature_reduce(signs: Iterable[Sign]) -> list[Sign]:
    """Cancel every ``+`` immediately left of a ``-`` until none remain."""
    stack: list[Sign] = []
    for s in signs:
        if s[0] == "-" and stack and stack[-1][0] == "+":
            stack.pop()
        else:
            stack.append(s)
    return stack


def parse_signs(text: str) -> list[Sign]:
    """``"+-+"`` -> tagged signs, tags being string positions."""
    text = text.replace("−", "-")
    return [(ch, pos) for pos, ch in enumerate(text)]


def signs_to_str(signs: Iterable[Sign]) -> str:
    return "".join(s for s, _ in signs)


@dataclass(frozen=True)
class SignatureAction:
    eps: int
    phi: int
    e_tag: Any
    f_tag: Any


def reduced_action(signs: Iterable[Sign]) -> SignatureAction:
    red = signature_reduce(signs)
    minus = [t for s, t in red if s == "-"]
    plus = [t for s, t in red if s == "+"]
    return SignatureAction(len(minus), len(plus),
                           minus[-1] if minus else None,
                           plus[0] if plus else None)


def word_signature(i: int, crystal: Crystal, word: Sequence[Element]) -> list[Sign]:
    """Unreduced i-signature of ``word[0] (x) word[1] (x) ...``, tagged by index."""
    out: list[Sign] = []
    for idx, b in enumerate(word):
        out.extend(("-", idx) for _ in range(crystal.epsilon(i, b)))
        out.extend(("+", idx) for _ in range(crystal.phi(i, b)))
    return out


def apply_word(crystal: Crystal, word: Sequence[int], b: Element) -> Element | None:
    """Apply f_{w[0]} f_{w[1]} ... f_{w[-1]} to b (rightmost operator first)."""
    for i in reversed(list(word)):
        b = crystal.f(i, b)
        if b is None:
            return None
    return b


# -- crystal graphs ---------------------------------------------------------

@dataclass
class CrystalGraph:
    crystal: Crystal | None
    vertices: dict[str, Element] = field(default_factory=dict)
    edges: list[tuple[str, str, int]] = field(default_factory=list)
    sources: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"from": a, "to": b, "i": i} for a, b, i in self.edges],
            "sources": list(self.sources),
        }

    def to_dot(self) -> str:
        lines = ["digraph crystal {"]
        for k in self.vertices:
            lines.append(f"  {json.dumps(k)};")
        for a, b, i in self.edges:
            lines.append(f"  {json.dumps(a)} -> {json.dumps(b)} [label=\"{i}\"];")
        lines.append("}")
        return "\n".join(lines) + "\n"


_DOT_EDGE = re.compile(r'^\s*("(?:[^"\\]|\\.)*")\s*->\s*("(?:[^"\\]|\\.)*")\s*\[label="(\d+)"\];\s*$')
_DOT_NODE = re.compile(r'^\s*("(?:[^"\\]|\\.)*");\s*$')


def graph_json_from_dot(text: str) -> dict:
    """Parse the DOT produced by :meth:`CrystalGraph.to_dot` back to JSON form."""
    vertices, edges = [], []
    for line in text.splitlines():
        if m := _DOT_EDGE.match(line):
            edges.append({"from": json.loads(m[1]), "to": json.loads(m[2]), "i": int(m[3])})
        elif m := _DOT_NODE.match(line):
            vertices.append(json.loads(m[1]))
    return {"vertices": vertices, "edges": edges}


def generate_graph(crystal: Crystal, seeds: Iterable[Element], depth: int,
                   use_e: bool = False) -> CrystalGraph:
    """Breadth-first closure of ``seeds`` under f_i (and e_i) up to ``depth`` steps.

    Edges are always recorded in the f-direction.  Vertex order is discovery
    order with residues tried in increasing order, so output is deterministic.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    g = CrystalGraph(crystal)
    queue = deque()

    def visit(b) -> str:
        k = crystal.key(b)
        seen = g.vertices.get(k)
        if seen is None:
            g.vertices[k] = b
        elif seen != b:
            raise ConventionError(f"encoding collision on {k!r}")
        return k

    for s in seeds:
        k = visit(s)
        if k not in g.sources:
            g.sources.append(k)
            queue.append((s, 0))
    edge_set = set()
    while queue:
        b, d = queue.popleft()
        if d == depth:
            continue
        kb = crystal.key(b)
        for i in crystal.residues:
            moves = [("f", crystal.f(i, b))]
            if use_e:
                moves.append(("e", crystal.e(i, b)))
            for kind, b2 in moves:
                if b2 is None:
                    continue
                new = crystal.key(b2) not in g.vertices
                k2 = visit(b2)
                edge = (kb, k2, i) if kind == "f" else (k2, kb, i)
                if edge not in edge_set:
                    edge_set.add(edge)
                    g.edges.append(edge)
                if new:
                    queue.append((b2, d + 1))
    if not use_e:
        # keep only edges whose endpoints were both reached
        g.edges = [e for e in g.edges if e[0] in g.vertices and e[1] in g.vertices]
    return g


def full_graph(crystal: FiniteCrystal) -> CrystalGraph:
    g = CrystalGraph(crystal)
    for b in crystal.elements:
        g.vertices[crystal.key(b)] = b
    for (i, b), b2 in crystal.arrows().items():
        g.edges.append((crystal.key(b), crystal.key(b2), i))
    return g


# -- checkers ---------------------------------------------------------------

@dataclass
class Report:
    violations: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, msg: str) -> None:
        self.violations.append(msg)


def _finite(v) -> bool:
    return v != NEG_INF


def check_axioms(graph: CrystalGraph) -> Report:
    """Verify the abstract crystal axioms on every vertex and edge of ``graph``."""
    c = graph.crystal
    rep = Report()
    for k, b in graph.vertices.items():
        wt = c.weight(b)
        for i in c.residues:
            rep.checked += 1
            eps, phi = c.epsilon(i, b), c.phi(i, b)
            if _finite(eps) and _finite(phi) and phi != eps + pairing(i, wt):
                rep.add(f"(a) {k} i={i}: phi={phi} eps={eps} <h,wt>={pairing(i, wt)}")
            up, down = c.e(i, b), c.f(i, b)
            if not _finite(phi) and (up is not None or down is not None):
                rep.add(f"(g) {k} i={i}: phi=-inf but an operator acts")
            ai = simple_root_cl(c.n, i)
            if up is not None:
                if c.weight(up) != wt + ai:
                    rep.add(f"(b) {k} i={i}: wt(e b) != wt(b)+alpha_i")
                if c.epsilon(i, up) != eps - 1 or c.phi(i, up) != phi + 1:
                    rep.add(f"(d) {k} i={i}: eps/phi of e b")
                back = c.f(i, up)
                if back is None or c.key(back) != k:
                    rep.add(f"(f) {k} i={i}: f e b != b")
            if down is not None:
                if c.weight(down) != wt - ai:
                    rep.add(f"(c) {k} i={i}: wt(f b) != wt(b)-alpha_i")
                if c.epsilon(i, down) != eps + 1 or c.phi(i, down) != phi - 1:
                    rep.add(f"(e) {k} i={i}: eps/phi of f b")
                back = c.e(i, down)
                if back is None or c.key(back) != k:
                    rep.add(f"(f) {k} i={i}: e f b != b")
    for a, b, i in graph.edges:
        src = graph.vertices.get(a)
        if src is None or b not in graph.vertices:
            rep.add(f"edge {a} -{i}-> {b}: endpoint missing")
            continue
        img = c.f(i, src)
        if img is None or c.key(img) != b:
            rep.add(f"edge {a} -{i}-> {b}: f_{i} disagrees")
    return rep


def check_strict_morphism(psi: Callable[[Element], Element], g1: CrystalGraph,
                          g2: CrystalGraph) -> Report:
    """Check that ``psi`` preserves wt, eps_i, phi_i and commutes with e_i, f_i."""
    c1, c2 = g1.crystal, g2.crystal
    rep = Report()

    def img(b):
        return None if b is None else psi(b)

    def same(x, y) -> bool:
        if x is None or y is None:
            return x is None and y is None
        return c2.key(x) == c2.key(y)

    for k, b in g1.vertices.items():
        pb = psi(b)
        rep.checked += 1
        if c1.weight(b) != c2.weight(pb):
            rep.add(f"wt {k} -> {c2.key(pb)}")
        for i in c1.residues:
            if c1.epsilon(i, b) != c2.epsilon(i, pb):
                rep.add(f"eps_{i} {k}")
            if c1.phi(i, b) != c2.phi(i, pb):
                rep.add(f"phi_{i} {k}")
            if not same(img(c1.e(i, b)), c2.e(i, pb)):
                rep.add(f"e_{i} {k}")
            if not same(img(c1.f(i, b)), c2.f(i, pb)):
                rep.add(f"f_{i} {k}")
    return rep
