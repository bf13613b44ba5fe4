"""JSON documents for algebras, A-infinity structures and equivalences.

Three document kinds share one layout::

    {
      "kind": "algebra" | "structure" | "equivalence",
      "field": {"kind": "rationals"} | {"kind": "prime-field", "characteristic": 5},
      "basis": [["e", 0], ...],
      "products": [{"left": "a", "right": "b", "result": [["c", "1/2"], ...]}, ...],
      "flags": {"associative": true, "commutative": false, "unit": "e" | null},
      "truncation": 5,                                   # structure, equivalence
      "commutative": false,                              # structure, equivalence
      "operations": [{"arity": 3, "input": [...], "output": [...]}, ...],
      "theory": "hochschild",                            # equivalence
      "equivalence": [{"arity": 2, "input": [...], "output": [...]}, ...]
    }

Rational coefficients are written as "p/q" strings and prime-field
coefficients as integers.  :func:`dumps` is canonical (basis order, then
lexicographic words), so parsing and re-emitting a document is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .ainf import AInfMorphism, AInfStructure, TwistingCochain
from .cochains import AlgebraError, Cochain, GradedAlgebra
from .cohomology import HARRISON, HOCHSCHILD, THEORIES
from .graded import FieldSpec, GradedSpace

KINDS = ("algebra", "structure", "equivalence")


class DocumentError(ValueError):
    """Invalid input document; ``location`` points at the offending entry."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


@dataclass
class AlgebraDocument:
    algebra: GradedAlgebra


@dataclass
class StructureDocument:
    structure: AInfStructure

    @property
    def algebra(self) -> GradedAlgebra:
        return self.structure.algebra


@dataclass
class EquivalenceDocument:
    """A structure together with {id, p_2, ...} to the trivial structure."""

    structure: AInfStructure
    theory: str
    components: dict = dc_field(default_factory=dict)

    @property
    def algebra(self) -> GradedAlgebra:
        return self.structure.algebra

    def morphism(self) -> AInfMorphism:
        S = self.structure
        target = AInfStructure.trivial(S.algebra, S.truncation, S.commutative)
        return AInfMorphism.from_perturbation(S, target, self.components)


# -- parsing ----------------------------------------------------------------------

def _expect(cond, location, message):
    if not cond:
        raise DocumentError(location, message)


def _parse_field(obj, loc="field") -> FieldSpec:
    _expect(isinstance(obj, dict), loc, "expected an object")
    kind = obj.get("kind")
    try:
        if kind == "rationals":
            return FieldSpec.rationals()
        if kind == "prime-field":
            p = obj.get("characteristic")
            _expect(isinstance(p, int) and not isinstance(p, bool), f"{loc}.characteristic", "expected an integer")
            return FieldSpec.prime(p)
    except ValueError as exc:
        raise DocumentError(loc, str(exc)) from None
    raise DocumentError(f"{loc}.kind", f"unknown field kind {kind!r}")


def _parse_basis(obj, field, loc="basis") -> GradedSpace:
    _expect(isinstance(obj, list), loc, "expected a list of [name, degree] pairs")
    names, degrees, seen = [], [], set()
    for i, entry in enumerate(obj):
        where = f"{loc}[{i}]"
        _expect(isinstance(entry, list) and len(entry) == 2, where, "expected [name, degree]")
        name, deg = entry
        _expect(isinstance(name, str) and name, where, "basis name must be a nonempty string")
        _expect(isinstance(deg, int) and not isinstance(deg, bool), where, "degree must be an integer")
        _expect(name not in seen, where, f"duplicate basis name {name!r}")
        seen.add(name)
        names.append(name)
        degrees.append(deg)
    return GradedSpace(tuple(names), tuple(degrees), field)


def _name(space: GradedSpace, name, loc) -> int:
    _expect(isinstance(name, str), loc, "expected a basis name")
    try:
        return space.index(name)
    except KeyError:
        raise DocumentError(loc, f"unknown basis name {name!r}") from None


def _parse_vector(space: GradedSpace, obj, loc) -> dict:
    _expect(isinstance(obj, list), loc, "expected a list of [name, coefficient] pairs")
    field = space.field
    vec: dict = {}
    for i, term in enumerate(obj):
        where = f"{loc}[{i}]"
        _expect(isinstance(term, list) and len(term) == 2, where, "expected [name, coefficient]")
        b = _name(space, term[0], where)
        _expect(b not in vec, where, f"basis element {term[0]!r} repeated")
        try:
            vec[b] = field.parse(term[1])
        except ValueError as exc:
            raise DocumentError(where, str(exc)) from None
    return {b: c for b, c in vec.items() if c}


def _degree_law(space, inputs, vec, shift, where, what):
    q = sum(space.degrees[i] for i in inputs) + shift
    for b in vec:
        if space.degrees[b] != q:
            raise DocumentError(
                where,
                f"{what} has a term {space.names[b]!r} of degree {space.degrees[b]}, expected degree {q}",
            )


def _parse_algebra(doc) -> GradedAlgebra:
    field = _parse_field(doc.get("field"))
    space = _parse_basis(doc.get("basis"), field)
    products = doc.get("products", [])
    _expect(isinstance(products, list), "products", "expected a list")
    table = {}
    for i, entry in enumerate(products):
        where = f"products[{i}]"
        _expect(isinstance(entry, dict), where, "expected an object")
        l = _name(space, entry.get("left"), f"{where}.left")
        r = _name(space, entry.get("right"), f"{where}.right")
        _expect((l, r) not in table, where, f"duplicate product entry {entry.get('left')}*{entry.get('right')}")
        vec = _parse_vector(space, entry.get("result"), f"{where}.result")
        _degree_law(space, (l, r), vec, 0, where, f"product {space.names[l]}*{space.names[r]}")
        table[(l, r)] = vec
    flags = doc.get("flags", {})
    _expect(isinstance(flags, dict), "flags", "expected an object")
    unit = flags.get("unit")
    unit_index = None if unit is None else _name(space, unit, "flags.unit")
    for key in ("associative", "commutative"):
        _expect(isinstance(flags.get(key, False), bool), f"flags.{key}", "expected true or false")
    try:
        return GradedAlgebra(
            space,
            table,
            associative=flags.get("associative", True),
            commutative=flags.get("commutative", False),
            unit=unit_index,
        )
    except AlgebraError as exc:
        raise DocumentError("flags", str(exc)) from None


def _parse_entries(space, obj, loc, degree_of, low) -> dict:
    """``[{"arity", "input", "output"}]`` -> {arity: {word: vector}}, degree law checked per entry."""
    _expect(isinstance(obj, list), loc, "expected a list")
    out: dict = {}
    for i, entry in enumerate(obj):
        where = f"{loc}[{i}]"
        _expect(isinstance(entry, dict), where, "expected an object")
        n = entry.get("arity")
        _expect(isinstance(n, int) and not isinstance(n, bool) and n >= low, f"{where}.arity", f"arity must be an integer >= {low}")
        word = entry.get("input")
        _expect(isinstance(word, list) and len(word) == n, f"{where}.input", f"expected a list of {n} basis names")
        w = tuple(_name(space, x, f"{where}.input[{j}]") for j, x in enumerate(word))
        vec = _parse_vector(space, entry.get("output"), f"{where}.output")
        _degree_law(space, w, vec, degree_of(n), where, f"arity-{n} entry on {list(word)}")
        bucket = out.setdefault(n, {})
        _expect(w not in bucket, where, f"duplicate entry for input {list(word)}")
        if vec:
            bucket[w] = vec
    return out


def _parse_structure(doc, A: GradedAlgebra) -> AInfStructure:
    N = doc.get("truncation")
    _expect(isinstance(N, int) and not isinstance(N, bool) and N >= 2, "truncation", "expected an integer >= 2")
    comm = doc.get("commutative", False)
    _expect(isinstance(comm, bool), "commutative", "expected true or false")
    ops = _parse_entries(A.space, doc.get("operations", []), "operations", lambda n: 2 - n, 3)
    for n in ops:
        _expect(n <= N, "operations", f"operation of arity {n} exceeds truncation {N}")
    S = A.space
    higher = {n: Cochain(S, S, n, 2 - n, v) for n, v in ops.items()}
    try:
        return AInfStructure(A, higher, N, comm)
    except ValueError as exc:
        raise DocumentError("operations", str(exc)) from None


def parse_document(obj) -> AlgebraDocument | StructureDocument | EquivalenceDocument:
    """Validate a decoded JSON object."""
    _expect(isinstance(obj, dict), "", "a document must be a JSON object")
    kind = obj.get("kind", "algebra")
    _expect(kind in KINDS, "kind", f"unknown document kind {kind!r}")
    A = _parse_algebra(obj)
    if kind == "algebra":
        return AlgebraDocument(A)
    S = _parse_structure(obj, A)
    if kind == "structure":
        return StructureDocument(S)
    theory = obj.get("theory", HOCHSCHILD)
    _expect(theory in THEORIES, "theory", f"unknown theory {theory!r}")
    comps = _parse_entries(A.space, obj.get("equivalence", []), "equivalence", lambda n: 1 - n, 2)
    sp = A.space
    p = {n: Cochain(sp, sp, n, 1 - n, v) for n, v in comps.items()}
    for n in p:
        _expect(n <= S.truncation, "equivalence", f"component of arity {n} is beyond truncation {S.truncation}")
    return EquivalenceDocument(S, theory, p)


def loads(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    return parse_document(obj)


def load(path) -> AlgebraDocument | StructureDocument | EquivalenceDocument:
    return loads(Path(path).read_text())


# -- emitting ---------------------------------------------------------------------

def _field_obj(field: FieldSpec) -> dict:
    if field.characteristic:
        return {"kind": "prime-field", "characteristic": field.characteristic}
    return {"kind": "rationals"}


def _vector_obj(space, vec) -> list:
    return [[space.names[b], space.field.format(vec[b])] for b in sorted(vec)]


def _entries_obj(cochains) -> list:
    out = []
    for c in sorted(cochains, key=lambda c: c.arity):
        sp = c.source
        for w in sorted(c.values):
            out.append({"arity": c.arity, "input": [sp.names[i] for i in w], "output": _vector_obj(c.target, c.values[w])})
    return out


def algebra_obj(A: GradedAlgebra, kind: str = "algebra") -> dict:
    sp = A.space
    return {
        "kind": kind,
        "field": _field_obj(A.field),
        "basis": [[n, d] for n, d in zip(sp.names, sp.degrees)],
        "products": [
            {"left": sp.names[l], "right": sp.names[r], "result": _vector_obj(sp, vec)}
            for (l, r), vec in sorted(A.table.items())
        ],
        "flags": {
            "associative": A.associative,
            "commutative": A.commutative,
            "unit": None if A.unit is None else sp.names[A.unit],
        },
    }


def structure_obj(S: AInfStructure, kind: str = "structure") -> dict:
    obj = algebra_obj(S.algebra, kind)
    obj["truncation"] = S.truncation
    obj["commutative"] = S.commutative
    obj["operations"] = _entries_obj(S.higher.values())
    return obj


def equivalence_obj(S: AInfStructure, theory: str, components: dict) -> dict:
    obj = structure_obj(S, "equivalence")
    obj["theory"] = theory
    obj["equivalence"] = _entries_obj(components.values())
    return obj


def twisting_obj(a: TwistingCochain) -> dict:
    """A twisting cochain written as the structure it defines (validity not required)."""
    obj = algebra_obj(a.algebra, "structure")
    obj["truncation"] = a.truncation
    obj["commutative"] = a.theory == HARRISON
    obj["operations"] = _entries_obj(a.components.values())
    return obj


def to_obj(doc) -> dict:
    if isinstance(doc, AlgebraDocument):
        return algebra_obj(doc.algebra)
    if isinstance(doc, StructureDocument):
        return structure_obj(doc.structure)
    if isinstance(doc, EquivalenceDocument):
        return equivalence_obj(doc.structure, doc.theory, doc.components)
    raise TypeError(f"not a document: {doc!r}")


def dumps(obj) -> str:
    """Canonical JSON text; documents are converted first."""
    if not isinstance(obj, dict):
        obj = to_obj(obj)
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def cochain_entries(c: Cochain) -> list:
    return _entries_obj([c])
