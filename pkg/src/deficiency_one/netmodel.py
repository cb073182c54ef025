"""Reaction networks, rate assignments, the kinetic matrix and text I/O.

Two input documents are understood.

Network file::

    species A B
    complex 1 = A
    complex 2 = 2 B + A
    complex 3 = 0
    reaction 1 -> 2 rate 3/2

Graph+h file (the complex graph and an h-vector given directly)::

    vertices 4
    arcs 2->1 2->3 3->2
    h 3 -1 -1 -1
    rate 2->1 0.5

Complexes are indexed ``1..c``. Numbers are read exactly: ``3/2``, ``0.25``
and ``-4`` all become :class:`~fractions.Fraction`.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from . import linalg
from .digraph import Arc, DiGraph


class ParseError(ValueError):
    """Malformed input document; carries the 1-based line and column."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + message)


class RateAssignment(Mapping):
    """Strictly positive exact rate coefficient for every arc of a graph."""

    def __init__(self, values: Union[Mapping, Iterable[Tuple[Arc, object]]]):
        items = values.items() if isinstance(values, Mapping) else values
        data: Dict[Arc, Fraction] = {}
        for arc, v in items:
            q = Fraction(v)
            if q <= 0:
                raise ValueError(f"rate for {arc} must be positive, got {q}")
            data[(int(arc[0]), int(arc[1]))] = q
        self._data = data

    @classmethod
    def uniform(cls, arcs: Iterable[Arc], value=1) -> "RateAssignment":
        return cls({a: value for a in arcs})

    def __getitem__(self, arc: Arc) -> Fraction:
        return self._data[arc]

    def __iter__(self) -> Iterator[Arc]:
        return iter(sorted(self._data))

    def __len__(self) -> int:
        return len(self._data)

    def __repr__(self) -> str:
        body = ", ".join(f"{i}->{j}: {q}" for (i, j), q in self.items())
        return f"RateAssignment({{{body}}})"

    def check_domain(self, arcs: Iterable[Arc]) -> None:
        want = set(arcs)
        have = set(self._data)
        if want != have:
            missing = sorted(want - have)
            extra = sorted(have - want)
            raise ValueError(f"rate assignment does not match the arc set (missing {missing}, extra {extra})")

    def scaled(self, arcs: Iterable[Arc], factor) -> "RateAssignment":
        """Copy with the rates on ``arcs`` multiplied by ``factor``."""
        factor = Fraction(factor)
        sel = set(arcs)
        return RateAssignment({a: (q * factor if a in sel else q) for a, q in self._data.items()})

    def to_json(self) -> Dict[str, str]:
        return {f"{i}->{j}": str(q) for (i, j), q in self.items()}


@dataclass(frozen=True)
class ReactionNetwork:
    """Species, complexes (columns of B) and reactions between complexes.

    Attributes:
        species: species names, in row order of ``B``.
        complexes: one coefficient tuple per complex (column of ``B``).
        reactions: arcs ``(i, j)`` over complex indices ``1..c``.
        rates: optional rate coefficients given in the input (may be partial).
    """

    species: Tuple[str, ...]
    complexes: Tuple[Tuple[int, ...], ...]
    reactions: frozenset
    rates: Dict[Arc, Fraction] = field(default_factory=dict, compare=True)

    def __post_init__(self):
        n, c = len(self.species), len(self.complexes)
        if len(set(self.species)) != n:
            raise ValueError("duplicate species names")
        for k, col in enumerate(self.complexes, start=1):
            if len(col) != n:
                raise ValueError(f"complex {k} has {len(col)} coefficients, expected {n}")
            if any(int(x) != x or x < 0 for x in col):
                raise ValueError(f"complex {k} has a negative or non-integer coefficient")
        if len(set(self.complexes)) != c:
            raise ValueError("duplicate complex")
        for i, j in self.reactions:
            if i == j:
                raise ValueError(f"self-loop reaction {i} -> {j}")
            if not (1 <= i <= c and 1 <= j <= c):
                raise ValueError(f"reaction {i} -> {j} references an unknown complex")
        for arc, q in self.rates.items():
            if arc not in self.reactions:
                raise ValueError(f"rate given for unknown reaction {arc}")
            if q <= 0:
                raise ValueError(f"rate for {arc} must be positive")

    @property
    def n(self) -> int:
        return len(self.species)

    @property
    def c(self) -> int:
        return len(self.complexes)

    @property
    def complex_matrix(self) -> linalg.Matrix:
        """``B`` as an ``n x c`` matrix."""
        return [[Fraction(self.complexes[k][s]) for k in range(self.c)] for s in range(self.n)]

    @property
    def graph(self) -> DiGraph:
        return DiGraph.from_count(self.c, self.reactions)

    def given_kappa(self) -> Optional[RateAssignment]:
        """Rates from the input file if every reaction has one."""
        if self.rates and set(self.rates) == set(self.reactions):
            return RateAssignment(self.rates)
        return None

    def complex_label(self, k: int) -> str:
        col = self.complexes[k - 1]
        terms = [(f"{x} " if x != 1 else "") + s for s, x in zip(self.species, col) if x]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class GraphHInstance:
    """A complex graph together with a directly supplied h-vector.

    ``h[k-1]`` is the coordinate of vertex ``k``; the vertices are ``1..c``.
    """

    graph: DiGraph
    h: Tuple[Fraction, ...]
    rates: Dict[Arc, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        c = len(self.graph)
        if self.graph.vertices != tuple(range(1, c + 1)):
            raise ValueError("graph vertices must be 1..c")
        h = tuple(Fraction(x) for x in self.h)
        if len(h) != c:
            raise ValueError(f"h has {len(h)} coordinates, expected {c}")
        if sum(h) != 0:
            raise ValueError("h must sum to zero")
        if not any(h):
            raise ValueError("h must be nonzero")
        object.__setattr__(self, "h", h)
        for arc, q in self.rates.items():
            if arc not in self.graph.arcs:
                raise ValueError(f"rate given for unknown arc {arc}")
            if q <= 0:
                raise ValueError(f"rate for {arc} must be positive")

    def given_kappa(self) -> Optional[RateAssignment]:
        if self.rates and set(self.rates) == set(self.graph.arcs):
            return RateAssignment(self.rates)
        return None


@dataclass(frozen=True)
class KineticMatrix:
    """The kinetic (Laplacian-type) matrix; rows and columns follow ``vertices``."""

    vertices: Tuple[int, ...]
    entries: Tuple[Tuple[Fraction, ...], ...]

    def as_lists(self) -> linalg.Matrix:
        return [list(r) for r in self.entries]

    def block(self, keep: Sequence[int]) -> linalg.Matrix:
        """Principal submatrix on the vertices ``keep`` (in the given order)."""
        pos = {v: k for k, v in enumerate(self.vertices)}
        return [[self.entries[pos[r]][pos[c]] for c in keep] for r in keep]

    def column_sums(self) -> List[Fraction]:
        return [sum((row[k] for row in self.entries), Fraction(0)) for k in range(len(self.vertices))]


def _graph_of(obj) -> DiGraph:
    if isinstance(obj, ReactionNetwork):
        return obj.graph
    if isinstance(obj, GraphHInstance):
        return obj.graph
    if isinstance(obj, DiGraph):
        return obj
    raise TypeError(f"expected a network, instance or graph, got {type(obj).__name__}")


def build_kinetic_matrix(net, kappa: Mapping) -> KineticMatrix:
    """Kinetic matrix: entry (j, i) is the rate of arc ``i -> j``, columns sum to zero."""
    g = _graph_of(net)
    kappa = kappa if isinstance(kappa, RateAssignment) else RateAssignment(kappa)
    kappa.check_domain(g.arcs)
    pos = {v: k for k, v in enumerate(g.vertices)}
    m = [[Fraction(0)] * len(pos) for _ in pos]
    for (i, j), q in kappa.items():
        m[pos[j]][pos[i]] += q
        m[pos[i]][pos[i]] -= q
    return KineticMatrix(g.vertices, tuple(tuple(r) for r in m))


def eval_massaction(net: ReactionNetwork, kappa: Mapping, x: Sequence) -> Tuple[List[Fraction], List[Fraction]]:
    """Monomial vector and vector field ``B I_kappa Theta(x)`` at ``x``.

    Returns:
        ``(theta, f)`` with ``theta`` of length c and ``f`` of length n.
    """
    if len(x) != net.n:
        raise ValueError(f"x has {len(x)} coordinates, expected {net.n}")
    x = [Fraction(v) for v in x]
    if any(v < 0 for v in x):
        raise ValueError("concentrations must be nonnegative")
    theta = []
    for col in net.complexes:
        p = Fraction(1)
        for xs, e in zip(x, col):
            if e:
                p *= xs**e
        theta.append(p)
    ik = build_kinetic_matrix(net, kappa).as_lists()
    f = linalg.matvec(net.complex_matrix, linalg.matvec(ik, theta))
    return theta, f


# --------------------------------------------------------------------- parsing

_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?$")
_ARC = re.compile(r"^(\d+)\s*->\s*(\d+)$")


def parse_number(tok: str, line: int = 0, col: int = 0) -> Fraction:
    if not _NUMBER.match(tok):
        raise ParseError(f"not a number: {tok!r}", line, col)
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad number {tok!r}: {exc}", line, col) from None


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, raw, body


def _tokens(raw: str, body: str):
    """Whitespace tokens with 1-based columns."""
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", body)]


def detect_mode(text: str) -> str:
    """``"network"`` or ``"graph_h"``, from the first keyword of the document."""
    for lineno, raw, body in _lines(text):
        word = body.split()[0]
        if word in ("species", "complex", "reaction"):
            return "network"
        if word in ("vertices", "arcs", "h", "rate"):
            return "graph_h"
        raise ParseError(f"unknown keyword {word!r}", lineno, raw.index(word) + 1)
    raise ParseError("empty document")


def parse_inputs(text: str, mode: Optional[str] = None):
    """Parse a network or graph+h document into a validated instance."""
    if mode is None:
        mode = detect_mode(text)
    if mode == "network":
        return _parse_network(text)
    if mode in ("graph_h", "graph"):
        return _parse_graph_h(text)
    raise ValueError(f"unknown mode {mode!r}")


def _parse_network(text: str) -> ReactionNetwork:
    species: Optional[List[str]] = None
    complexes: Dict[int, Dict[str, int]] = {}
    reactions: List[Arc] = []
    rates: Dict[Arc, Fraction] = {}
    for lineno, raw, body in _lines(text):
        toks = _tokens(raw, body)
        kw, kcol = toks[0]
        if kw == "species":
            if species is not None:
                raise ParseError("species declared twice", lineno, kcol)
            species = [t for t, _ in toks[1:]]
            if not species:
                raise ParseError("species list is empty", lineno, kcol)
            for name, col in toks[1:]:
                if not re.match(r"^[A-Za-z_][\w.]*$", name):
                    raise ParseError(f"bad species name {name!r}", lineno, col)
            if len(set(species)) != len(species):
                raise ParseError("duplicate species name", lineno, kcol)
        elif kw == "complex":
            if species is None:
                raise ParseError("complex before species", lineno, kcol)
            if len(toks) < 4 or toks[2][0] != "=":
                raise ParseError("expected 'complex <idx> = <terms>'", lineno, kcol)
            idx = _parse_index(toks[1], lineno)
            if idx in complexes:
                raise ParseError(f"complex {idx} defined twice", lineno, toks[1][1])
            complexes[idx] = _parse_complex(toks[3:], species, lineno)
        elif kw == "reaction":
            m = re.match(r"^\s*reaction\s+(\d+)\s*->\s*(\d+)\s*(?:rate\s+(\S+))?\s*$", body)
            if not m:
                raise ParseError("expected 'reaction <i> -> <j> [rate <q>]'", lineno, kcol)
            arc = (int(m.group(1)), int(m.group(2)))
            if arc[0] == arc[1]:
                raise ParseError(f"self-loop reaction {arc[0]} -> {arc[1]}", lineno, kcol)
            if arc in reactions:
                raise ParseError(f"duplicate reaction {arc[0]} -> {arc[1]}", lineno, kcol)
            reactions.append(arc)
            if m.group(3) is not None:
                q = parse_number(m.group(3), lineno, m.start(3) + 1)
                if q <= 0:
                    raise ParseError("rate must be positive", lineno, m.start(3) + 1)
                rates[arc] = q
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, kcol)
    if species is None:
        raise ParseError("missing 'species' line")
    if not complexes:
        raise ParseError("no complexes defined")
    c = len(complexes)
    if sorted(complexes) != list(range(1, c + 1)):
        raise ParseError(f"complex indices must be contiguous from 1, got {sorted(complexes)}")
    for i, j in reactions:
        if not (i in complexes and j in complexes):
            raise ParseError(f"reaction {i} -> {j} references an unknown complex")
    cols = tuple(tuple(complexes[k].get(s, 0) for s in species) for k in range(1, c + 1))
    if len(set(cols)) != c:
        raise ParseError("duplicate complex")
    return ReactionNetwork(tuple(species), cols, frozenset(reactions), rates)


def _parse_index(tok, lineno) -> int:
    text, col = tok
    if not text.isdigit() or int(text) < 1:
        raise ParseError(f"bad index {text!r}", lineno, col)
    return int(text)


def _parse_complex(toks, species: Sequence[str], lineno: int) -> Dict[str, int]:
    if len(toks) == 1 and toks[0][0] == "0":
        return {}
    out: Dict[str, int] = {}
    k = 0
    expect_term = True
    while k < len(toks):
        tok, col = toks[k]
        if not expect_term:
            if tok != "+":
                raise ParseError(f"expected '+', got {tok!r}", lineno, col)
            expect_term = True
            k += 1
            continue
        coef = 1
        if tok.isdigit():
            coef = int(tok)
            k += 1
            if k == len(toks):
                raise ParseError("coefficient without species", lineno, col)
            tok, col = toks[k]
        else:
            m = re.match(r"^(\d+)([A-Za-z_].*)$", tok)
            if m:
                coef, tok = int(m.group(1)), m.group(2)
        if tok not in species:
            raise ParseError(f"unknown species {tok!r}", lineno, col)
        out[tok] = out.get(tok, 0) + coef
        k += 1
        expect_term = False
    if expect_term:
        raise ParseError("dangling '+'", lineno, toks[-1][1])
    return {s: v for s, v in out.items() if v}


def _parse_graph_h(text: str) -> GraphHInstance:
    c: Optional[int] = None
    arcs: List[Arc] = []
    h: Optional[List[Fraction]] = None
    rates: Dict[Arc, Fraction] = {}
    for lineno, raw, body in _lines(text):
        toks = _tokens(raw, body)
        kw, kcol = toks[0]
        if kw == "vertices":
            if len(toks) != 2:
                raise ParseError("expected 'vertices <c>'", lineno, kcol)
            c = _parse_index(toks[1], lineno)
        elif kw == "arcs":
            rest = body[body.index("arcs") + 4 :]
            for m in re.finditer(r"(\S+?)\s*->\s*(\S+)|\S+", rest):
                col = body.index("arcs") + 5 + m.start()
                if m.group(1) is None or not (m.group(1).isdigit() and m.group(2).isdigit()):
                    raise ParseError(f"bad arc {m.group(0)!r}", lineno, col)
                arc = (int(m.group(1)), int(m.group(2)))
                if arc[0] == arc[1]:
                    raise ParseError(f"self-loop arc {arc[0]}->{arc[1]}", lineno, col)
                if arc in arcs:
                    raise ParseError(f"duplicate arc {arc[0]}->{arc[1]}", lineno, col)
                arcs.append(arc)
        elif kw == "h":
            h = [parse_number(t, lineno, col) for t, col in toks[1:]]
        elif kw == "rate":
            m = re.match(r"^\s*rate\s+(\d+)\s*->\s*(\d+)\s+(\S+)\s*$", body)
            if not m:
                raise ParseError("expected 'rate <i>-><j> <q>'", lineno, kcol)
            q = parse_number(m.group(3), lineno, m.start(3) + 1)
            if q <= 0:
                raise ParseError("rate must be positive", lineno, m.start(3) + 1)
            rates[(int(m.group(1)), int(m.group(2)))] = q
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, kcol)
    if c is None:
        raise ParseError("missing 'vertices' line")
    if h is None:
        raise ParseError("missing 'h' line")
    if len(h) != c:
        raise ParseError(f"h has {len(h)} entries, expected {c}")
    if sum(h) != 0:
        raise ParseError("h must sum to zero")
    if not any(h):
        raise ParseError("h must be nonzero")
    for i, j in arcs:
        if not (1 <= i <= c and 1 <= j <= c):
            raise ParseError(f"arc {i}->{j} references an unknown vertex")
    for arc in rates:
        if arc not in arcs:
            raise ParseError(f"rate given for unknown arc {arc[0]}->{arc[1]}")
    return GraphHInstance(DiGraph.from_count(c, arcs), tuple(h), rates)


# ----------------------------------------------------------------- serializing


def dumps(instance) -> str:
    """Serialize an instance back to its input format."""
    if isinstance(instance, ReactionNetwork):
        lines = ["species " + " ".join(instance.species)]
        for k in range(1, instance.c + 1):
            lines.append(f"complex {k} = {instance.complex_label(k)}")
        for i, j in sorted(instance.reactions):
            rate = f" rate {instance.rates[(i, j)]}" if (i, j) in instance.rates else ""
            lines.append(f"reaction {i} -> {j}{rate}")
        return "\n".join(lines) + "\n"
    if isinstance(instance, GraphHInstance):
        g = instance.graph
        lines = [f"vertices {len(g)}"]
        if g.arcs:
            lines.append("arcs " + " ".join(f"{i}->{j}" for i, j in g.sorted_arcs()))
        lines.append("h " + " ".join(str(x) for x in instance.h))
        for (i, j), q in sorted(instance.rates.items()):
            lines.append(f"rate {i}->{j} {q}")
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot serialize {type(instance).__name__}")
