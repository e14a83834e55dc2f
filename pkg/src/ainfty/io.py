"""JSON documents for categories, functors, multifunctors, prenats and bundles.

Documents have four top-level keys: ``schema_version``, ``kind``, ``field``
and ``payload``.  Serialization is canonical: objects, basis labels and
sparse entries are sorted, so ``serialize(parse(s)) == s`` byte for byte.

A sparse table entry is ``[arity, chain, in_index, out_index, scalar]``.  The
chain lists objects from target to source (``chain[p]`` is the target of the
p-th argument), ``in_index`` gives one basis index per argument and
``out_index`` indexes the output basis.  Scalars are strings ``"p/q"`` in
lowest terms (or residues for ``Fp:<p>``).
"""

from __future__ import annotations

import json
from typing import Any

from .category import EXACT, TRUNCATED, AInftyCategory, Mor
from .cocat import Word
from .fun import Prenat
from .functor import AInftyFunctor, Multifunctor
from .graded import GradedVectorSpace
from .scalars import Field, field_from_name

SCHEMA_VERSION = "1"
KINDS = ("category", "functor", "multifunctor", "prenat", "bundle")


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '$'}: {message}")
        self.path = path


# -- atoms ------------------------------------------------------------------

def encode_atom(x) -> Any:
    if isinstance(x, bool):
        raise TypeError("booleans are not valid labels")
    if isinstance(x, (str, int)):
        return x
    if isinstance(x, tuple):
        return [encode_atom(y) for y in x]
    raise TypeError(f"cannot encode label {x!r}")


def decode_atom(x, path="") -> Any:
    if isinstance(x, bool):
        raise SchemaError(path, "booleans are not valid labels")
    if isinstance(x, (str, int)):
        return x
    if isinstance(x, list):
        return tuple(decode_atom(y, f"{path}[{i}]") for i, y in enumerate(x))
    raise SchemaError(path, f"invalid label {x!r}")


def _key(x) -> str:
    return json.dumps(encode_atom(x), sort_keys=True)


def _expect(obj, keys: set, path: str, optional: set = frozenset()) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    unknown = set(obj) - keys - set(optional)
    if unknown:
        raise SchemaError(path, f"unknown keys {sorted(unknown)}")
    missing = keys - set(obj)
    if missing:
        raise SchemaError(path, f"missing keys {sorted(missing)}")


def _list(obj, path):
    if not isinstance(obj, list):
        raise SchemaError(path, "expected a list")
    return obj


def _int(obj, path):
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise SchemaError(path, "expected an integer")
    return obj


def _scalar(field: Field, s, path):
    if not isinstance(s, str):
        raise SchemaError(path, "scalars are strings")
    try:
        v = field.parse(s)
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(path, f"bad scalar {s!r}") from e
    if field.format(v) != s:
        raise SchemaError(path, f"scalar {s!r} not in canonical form")
    return v


# -- categories ---------------------------------------------------------------

class _Index:
    """Basis indices of a category, in canonical order."""

    def __init__(self, a: AInftyCategory):
        self.a = a
        self.objects = sorted(a.objects, key=_key)
        self.basis = {pair: sorted(sp.labels, key=_key) for pair, sp in a.homs.items()}
        self.pos = {pair: {l: i for i, l in enumerate(ls)} for pair, ls in self.basis.items()}

    def index(self, m: Mor) -> int:
        return self.pos[(m.src, m.tgt)][m.label]

    def mor(self, x, y, i, path) -> Mor:
        ls = self.basis.get((x, y))
        if ls is None or not (0 <= i < len(ls)):
            raise SchemaError(path, f"no basis element {i} in hom({x!r}, {y!r})")
        return Mor(x, y, ls[i])


def _encode_chain(ix: _Index, args: tuple):
    chain = [args[0].tgt] + [f.src for f in args]
    return [encode_atom(x) for x in chain], [ix.index(f) for f in args]


def _decode_chain(ix: _Index, chain, idx, path):
    chain = [decode_atom(x, f"{path}.chain") for x in _list(chain, path)]
    idx = [_int(i, path) for i in _list(idx, path)]
    if len(chain) != len(idx) + 1:
        raise SchemaError(path, "chain length must be arity + 1")
    return tuple(ix.mor(chain[p + 1], chain[p], idx[p], path) for p in range(len(idx)))


def _encode_table(ix_in: _Index, ix_out: _Index, tables: dict, field: Field) -> list:
    rows = []
    for k, table in tables.items():
        for args, vec in table.items():
            chain, idx = _encode_chain(ix_in, args)
            for y, c in vec.items():
                if c:
                    rows.append([k, chain, idx, ix_out.index(y), field.format(c)])
    rows.sort(key=lambda r: json.dumps(r))
    return rows


def _decode_table(ix_in: _Index, ix_out: _Index, rows, field, path, out_obj=lambda x: x) -> dict:
    tables: dict = {}
    for i, row in enumerate(_list(rows, path)):
        p = f"{path}[{i}]"
        row = _list(row, p)
        if len(row) != 5:
            raise SchemaError(p, "entries are [arity, chain, in_index, out_index, scalar]")
        k, chain, idx, out, s = row
        k = _int(k, p)
        args = _decode_chain(ix_in, chain, idx, p)
        if len(args) != k:
            raise SchemaError(p, "arity does not match the chain")
        y = ix_out.mor(out_obj(args[-1].src), out_obj(args[0].tgt), _int(out, p), p)
        vec = tables.setdefault(k, {}).setdefault(args, {})
        if y in vec:
            raise SchemaError(p, "duplicate entry")
        vec[y] = _scalar(field, s, p)
    return tables


def category_payload(a: AInftyCategory) -> dict:
    ix = _Index(a)
    homs = []
    for (x, y), ls in sorted(ix.basis.items(), key=lambda kv: (_key(kv[0][0]), _key(kv[0][1]))):
        homs.append({"src": encode_atom(x), "tgt": encode_atom(y),
                     "basis": [[encode_atom(l), a.homs[(x, y)].degree(l)] for l in ls]})
    out = {"name": a.name, "mode": a.mode, "arity_bound": a.arity_bound,
           "objects": [encode_atom(x) for x in ix.objects], "homs": homs,
           "m": _encode_table(ix, ix, a.mult, a.field)}
    if a.augmentation is not None:
        out["augmentation"] = sorted(
            ([encode_atom(x), ix.index(m), a.field.format(c)]
             for x, vec in a.augmentation.items() for m, c in vec.items() if c),
            key=json.dumps)
    return out


def category_from_payload(p: dict, field: Field, path="payload") -> AInftyCategory:
    _expect(p, {"name", "mode", "arity_bound", "objects", "homs", "m"}, path, {"augmentation"})
    if p["mode"] not in (EXACT, TRUNCATED):
        raise SchemaError(f"{path}.mode", f"mode must be {EXACT!r} or {TRUNCATED!r}")
    if not isinstance(p["name"], str):
        raise SchemaError(f"{path}.name", "expected a string")
    objects = [decode_atom(x, f"{path}.objects") for x in _list(p["objects"], f"{path}.objects")]
    if len(set(objects)) != len(objects):
        raise SchemaError(f"{path}.objects", "duplicate objects")
    homs = {}
    for i, h in enumerate(_list(p["homs"], f"{path}.homs")):
        hp = f"{path}.homs[{i}]"
        _expect(h, {"src", "tgt", "basis"}, hp)
        x, y = decode_atom(h["src"], hp), decode_atom(h["tgt"], hp)
        if x not in objects or y not in objects:
            raise SchemaError(hp, "hom references an undeclared object")
        if (x, y) in homs:
            raise SchemaError(hp, "duplicate hom")
        items = []
        for j, b in enumerate(_list(h["basis"], f"{hp}.basis")):
            b = _list(b, f"{hp}.basis[{j}]")
            if len(b) != 2:
                raise SchemaError(f"{hp}.basis[{j}]", "basis entries are [label, degree]")
            items.append((decode_atom(b[0], hp), _int(b[1], hp)))
        try:
            homs[(x, y)] = GradedVectorSpace.of(items)
        except ValueError as e:
            raise SchemaError(hp, str(e)) from e
    shell = AInftyCategory(objects, homs, {}, field=field)
    ix = _Index(shell)
    mult = _decode_table(ix, ix, p["m"], field, f"{path}.m")
    aug = None
    if "augmentation" in p:
        aug = {}
        for i, row in enumerate(_list(p["augmentation"], f"{path}.augmentation")):
            rp = f"{path}.augmentation[{i}]"
            row = _list(row, rp)
            if len(row) != 3:
                raise SchemaError(rp, "entries are [object, index, scalar]")
            x = decode_atom(row[0], rp)
            aug.setdefault(x, {})[ix.mor(x, x, _int(row[1], rp), rp)] = _scalar(field, row[2], rp)
    return AInftyCategory(objects, homs, mult, _int(p["arity_bound"], f"{path}.arity_bound"),
                          p["mode"], field, aug, p["name"])


# -- functors -----------------------------------------------------------------

def functor_payload(f: AInftyFunctor) -> dict:
    if f.rule is not None:
        f = f.tabulate(f.arity_bound)
    si, ti = _Index(f.source), _Index(f.target)
    return {"name": f.name, "mode": f.mode, "arity_bound": f.arity_bound,
            "source": category_payload(f.source), "target": category_payload(f.target),
            "object_map": [[encode_atom(x), encode_atom(f.object_map[x])] for x in si.objects],
            "components": _encode_table(si, ti, f.components, f.field)}


def functor_from_payload(p: dict, field: Field, path="payload") -> AInftyFunctor:
    _expect(p, {"name", "mode", "arity_bound", "source", "target", "object_map", "components"}, path)
    src = category_from_payload(p["source"], field, f"{path}.source")
    tgt = category_from_payload(p["target"], field, f"{path}.target")
    om = {}
    for i, row in enumerate(_list(p["object_map"], f"{path}.object_map")):
        rp = f"{path}.object_map[{i}]"
        row = _list(row, rp)
        if len(row) != 2:
            raise SchemaError(rp, "entries are [source object, target object]")
        x, y = decode_atom(row[0], rp), decode_atom(row[1], rp)
        if x not in src.objects or y not in tgt.objects:
            raise SchemaError(rp, "unknown object")
        om[x] = y
    if set(om) != set(src.objects):
        raise SchemaError(f"{path}.object_map", "object map must cover every source object")
    if p["mode"] not in (EXACT, TRUNCATED):
        raise SchemaError(f"{path}.mode", "bad mode")
    comps = _decode_table(_Index(src), _Index(tgt), p["components"], field, f"{path}.components",
                          out_obj=lambda x: om[x])
    return AInftyFunctor(src, tgt, om, comps, _int(p["arity_bound"], f"{path}.arity_bound"),
                         p["mode"], name=p["name"])


# -- multifunctors and prenats ----------------------------------------------------

def _encode_word(ix: _Index, w: Word):
    if not w.letters:
        return [[encode_atom(w.src)], []]
    chain, idx = _encode_chain(ix, tuple(w.letters))
    return [chain, idx]


def _decode_word(ix: _Index, enc, path) -> Word:
    enc = _list(enc, path)
    if len(enc) != 2:
        raise SchemaError(path, "words are [chain, indices]")
    chain = _list(enc[0], path)
    if not _list(enc[1], path):
        if len(chain) != 1:
            raise SchemaError(path, "empty word needs exactly one object")
        x = decode_atom(chain[0], path)
        if x not in ix.a.objects:
            raise SchemaError(path, "unknown object")
        return Word(x, x, ())
    args = _decode_chain(ix, enc[0], enc[1], path)
    return Word(args[-1].src, args[0].tgt, args)


def _encode_keyed(ixs, ix_out, values: dict, field) -> list:
    rows = []
    for key, vec in values.items():
        words = [_encode_word(ix, w) for ix, w in zip(ixs, key)]
        for y, c in vec.items():
            if c:
                rows.append([words, [encode_atom(y.src), encode_atom(y.tgt)], ix_out.index(y),
                             field.format(c)])
    rows.sort(key=json.dumps)
    return rows


def _decode_keyed(ixs, ix_out, rows, field, path) -> dict:
    out: dict = {}
    for i, row in enumerate(_list(rows, path)):
        rp = f"{path}[{i}]"
        row = _list(row, rp)
        if len(row) != 4:
            raise SchemaError(rp, "entries are [words, [src, tgt], out_index, scalar]")
        words = _list(row[0], rp)
        if len(words) != len(ixs):
            raise SchemaError(rp, "one word per source")
        key = tuple(_decode_word(ix, w, f"{rp}.words[{j}]") for j, (ix, w) in enumerate(zip(ixs, words)))
        ends = _list(row[1], rp)
        if len(ends) != 2:
            raise SchemaError(rp, "expected [src, tgt]")
        y = ix_out.mor(decode_atom(ends[0], rp), decode_atom(ends[1], rp), _int(row[2], rp), rp)
        vec = out.setdefault(key, {})
        if y in vec:
            raise SchemaError(rp, "duplicate entry")
        vec[y] = _scalar(field, row[3], rp)
    return out


def multifunctor_payload(M: Multifunctor) -> dict:
    import itertools
    ixs = [_Index(a) for a in M.sources]
    objs = [list(itertools.product(*[ix.objects for ix in ixs]))][0]
    values = {k: M(k) for k in M.tensor.all_basis(M.weight_bound)}
    return {"name": M.name, "mode": M.mode, "weight_bound": M.weight_bound,
            "sources": [category_payload(a) for a in M.sources],
            "target": category_payload(M.target),
            "object_map": [[encode_atom(tuple(x)), encode_atom(M.obj(x))] for x in objs],
            "components": _encode_keyed(ixs, _Index(M.target), values, M.field)}


def multifunctor_from_payload(p: dict, field: Field, path="payload") -> Multifunctor:
    _expect(p, {"name", "mode", "weight_bound", "sources", "target", "object_map", "components"}, path)
    sources = [category_from_payload(s, field, f"{path}.sources[{i}]")
               for i, s in enumerate(_list(p["sources"], f"{path}.sources"))]
    tgt = category_from_payload(p["target"], field, f"{path}.target")
    om = {}
    for i, row in enumerate(_list(p["object_map"], f"{path}.object_map")):
        rp = f"{path}.object_map[{i}]"
        row = _list(row, rp)
        if len(row) != 2:
            raise SchemaError(rp, "entries are [object tuple, target object]")
        om[decode_atom(row[0], rp)] = decode_atom(row[1], rp)
    if p["mode"] not in (EXACT, TRUNCATED):
        raise SchemaError(f"{path}.mode", "bad mode")
    comps = _decode_keyed([_Index(a) for a in sources], _Index(tgt), p["components"], field,
                          f"{path}.components")
    return Multifunctor(sources, tgt, om, comps, None, _int(p["weight_bound"], f"{path}.weight_bound"),
                        p["mode"], p["name"])


def prenat_payload(t: Prenat, weight: int) -> dict:
    for F in (t.F1, t.F2):
        if F.weight_bound < weight:
            F.weight_bound = weight
    m1, m2 = t.F1.tabulate(weight), t.F2.tabulate(weight)
    ixs = [_Index(a) for a in t.F1.sources]
    return {"name": t.name, "degree": t.degree, "weight": weight,
            "F1": multifunctor_payload(m1), "F2": multifunctor_payload(m2),
            "values": _encode_keyed(ixs, _Index(t.target), t.restricted(weight), t.field)}


def prenat_from_payload(p: dict, field: Field, path="payload") -> Prenat:
    _expect(p, {"name", "degree", "weight", "F1", "F2", "values"}, path)
    F1 = multifunctor_from_payload(p["F1"], field, f"{path}.F1")
    F2 = multifunctor_from_payload(p["F2"], field, f"{path}.F2")
    vals = _decode_keyed([_Index(a) for a in F1.sources], _Index(F1.target), p["values"], field,
                         f"{path}.values")
    t = Prenat(F1, F2, _int(p["degree"], f"{path}.degree"), vals, name=p["name"])
    t.weight = _int(p["weight"], f"{path}.weight")
    return t


# -- documents --------------------------------------------------------------

def _payload(x) -> tuple[str, dict]:
    if isinstance(x, AInftyCategory):
        return "category", category_payload(x)
    if isinstance(x, AInftyFunctor):
        return "functor", functor_payload(x)
    if isinstance(x, Multifunctor):
        return "multifunctor", multifunctor_payload(x)
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], Prenat):
        return "prenat", prenat_payload(*x)
    if isinstance(x, Prenat):
        if not hasattr(x, "weight"):
            raise TypeError("pass a prenat as (prenat, weight)")
        return "prenat", prenat_payload(x, x.weight)
    if isinstance(x, dict):
        return "bundle", {"items": {k: _document(v) for k, v in sorted(x.items())}}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _field_of(x) -> Field:
    if isinstance(x, tuple):
        return x[0].field
    if isinstance(x, dict):
        fields = {_field_of(v) for v in x.values()}
        if len(fields) > 1:
            raise ValueError("bundle items must share a field")
        return fields.pop() if fields else field_from_name("Q")
    return x.field


def _document(x) -> dict:
    kind, payload = _payload(x)
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "field": _field_of(x).name, "payload": payload}


def _emit(v, indent: int = 0) -> str:
    """Indented JSON with dicts and lists of dicts expanded and flat rows inline."""
    pad = " " * (indent + 1)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_emit(v[k], indent + 1)}" for k in sorted(v)]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    if isinstance(v, list) and any(isinstance(y, (dict, list)) for y in v) and \
            (any(isinstance(y, dict) for y in v) or len(json.dumps(v)) > 80):
        items = [pad + _emit(y, indent + 1) for y in v]
        return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"
    return json.dumps(v, sort_keys=True, separators=(", ", ": "))


def serialize(x) -> str:
    """Canonical JSON text.  Prenats are passed as ``(prenat, weight)``; bundles as dicts."""
    return _emit(_document(x)) + "\n"


def _from_document(doc, path="") -> Any:
    _expect(doc, {"schema_version", "kind", "field", "payload"}, path)
    if doc["schema_version"] != SCHEMA_VERSION:
        raise SchemaError(f"{path}.schema_version", f"unsupported version {doc['schema_version']!r}")
    try:
        field = field_from_name(doc["field"]) if isinstance(doc["field"], str) else None
    except ValueError:
        field = None
    if field is None:
        raise SchemaError(f"{path}.field", "field must be 'Q' or 'Fp:<p>'")
    kind, p, pp = doc["kind"], doc["payload"], f"{path}.payload"
    if kind == "category":
        return category_from_payload(p, field, pp)
    if kind == "functor":
        return functor_from_payload(p, field, pp)
    if kind == "multifunctor":
        return multifunctor_from_payload(p, field, pp)
    if kind == "prenat":
        return prenat_from_payload(p, field, pp)
    if kind == "bundle":
        _expect(p, {"items"}, pp)
        if not isinstance(p["items"], dict):
            raise SchemaError(f"{pp}.items", "expected an object")
        return {k: _from_document(v, f"{pp}.items.{k}") for k, v in p["items"].items()}
    raise SchemaError(f"{path}.kind", f"kind must be one of {KINDS}")


def parse(text: str | bytes) -> Any:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"line {e.lineno}", e.msg) from e
    try:
        return _from_document(doc)
    except SchemaError:
        raise
    except (ValueError, TypeError, KeyError) as e:
        raise SchemaError("payload", str(e)) from e


def load(path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(x, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(x))


def categories_equal(a: AInftyCategory, b: AInftyCategory) -> bool:
    return category_payload(a) == category_payload(b) and a.field == b.field
