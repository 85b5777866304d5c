"""Instance files: TOML documents with integer-only payloads.

Layout::

    label = "split22"
    seed = "split22"

    [base]
    p = 3                      # or: rational = true

    [fields.K]
    degree = 2                 # modulus = [1, 0, 1] (constant term first)

    [bimodule]
    type = "sum"               # twist | sum | simple | field-as-bimodule | raw
    ...

    [expect]
    dims = [2, 2]

    [budgets]
    enumeration = 1000000
    max_span = 6

Field elements are written as coefficient lists over the base field,
elements of a relative extension E = K[y]/(g) as lists of such lists.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import tomli

from .bimodule import (
    Bimodule,
    direct_sum,
    field_as_bimodule,
    simple_from_embedding,
    twist_bimodule,
)
from .errors import NcsymError, ParseError, ValidationError
from .fields import (
    BaseField,
    ExtField,
    FieldHom,
    embeddings,
    frobenius,
    identity,
    make_extension,
    make_tower,
)

BIMODULE_TYPES = ("twist", "sum", "simple", "field-as-bimodule", "raw")


@dataclass
class InstanceSpec:
    label: str
    seed: str
    base: BaseField
    fields: dict
    bimodule: Bimodule
    dims: tuple
    enumeration_budget: int
    max_span: int
    factor_hints: list | None = None
    raw: dict = field(default_factory=dict, repr=False)

    def echo(self) -> dict:
        return {
            "label": self.label,
            "base": str(self.base),
            "fields": {k: list(map(str, f.modulus)) for k, f in self.fields.items()},
            "bimodule": self.raw.get("bimodule", {}).get("type"),
            "dims": list(self.dims),
        }


def fixture_path(name: str) -> Path:
    """Path of a shipped instance file such as ``split22.spec``."""
    return Path(str(resources.files("ncsymalg") / "instances" / name))


def _check_no_floats(obj, where="") -> None:
    if isinstance(obj, float):
        raise ValidationError(f"{where or 'value'}: floats are not allowed ({obj!r})")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_no_floats(v, f"{where}.{k}" if where else k)
    elif isinstance(obj, list):
        for n, v in enumerate(obj):
            _check_no_floats(v, f"{where}[{n}]")


def _get(table: dict, key: str, where: str, kind=None, default=...):
    if key not in table:
        if default is ...:
            raise ValidationError(f"{where}: missing key '{key}'")
        return default
    value = table[key]
    if kind is not None and not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ValidationError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}, got {value!r}")
    return value


def _int_list(value, where: str) -> list:
    if not isinstance(value, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in value):
        raise ValidationError(f"{where}: expected a list of integers, got {value!r}")
    return value


def _parse_base(doc: dict) -> BaseField:
    table = _get(doc, "base", "document", dict)
    if table.get("rational"):
        if "p" in table:
            raise ValidationError("base: give either p or rational = true")
        return BaseField.rational()
    p = _get(table, "p", "base", int)
    if p == 2:
        raise ValidationError("base.p: characteristic 2 is not supported")
    try:
        return BaseField.prime(p)
    except ValueError as exc:
        raise ValidationError(f"base.p: {exc}") from None


def _parse_fields(doc: dict, F: BaseField) -> dict:
    out = {}
    for name, table in _get(doc, "fields", "document", dict).items():
        where = f"fields.{name}"
        if not isinstance(table, dict):
            raise ValidationError(f"{where}: expected a table")
        degree = _get(table, "degree", where, int)
        modulus = table.get("modulus")
        if modulus is not None:
            modulus = _int_list(modulus, f"{where}.modulus")
        try:
            out[name] = make_extension(F, degree, modulus, label=name)
        except (NcsymError, ValueError) as exc:
            raise ValidationError(f"{where}: {exc}") from None
    return out


def _resolve_field(fields: dict, name, where: str) -> ExtField:
    if name not in fields:
        raise ValidationError(f"{where}: unknown field '{name}'")
    return fields[name]


def _automorphism(K: ExtField, table: dict, where: str) -> FieldHom:
    if "gen_image" in table:
        img = K(_int_list(table["gen_image"], f"{where}.gen_image"))
        return FieldHom(K, K, img)
    power = _get(table, "frobenius_power", where, int, 0)
    h = identity(K)
    if power:
        frob = frobenius(K)
        for _ in range(power % K.degree):
            h = frob.compose(h)
    return h


def _build_bimodule(table: dict, fields: dict, where: str) -> Bimodule:
    kind = _get(table, "type", where, str)
    if kind not in BIMODULE_TYPES:
        raise ValidationError(f"{where}.type: expected one of {', '.join(BIMODULE_TYPES)}, got {kind!r}")
    label = table.get("label")
    if kind == "twist":
        K = _resolve_field(fields, _get(table, "field", where, str), f"{where}.field")
        return twist_bimodule(K, _automorphism(K, table, where), label)
    if kind == "sum":
        parts = _get(table, "parts", where, list)
        if not parts:
            raise ValidationError(f"{where}.parts: empty direct sum")
        mods = [_build_bimodule(p, fields, f"{where}.parts[{n}]") for n, p in enumerate(parts)]
        out = mods[0]
        for m in mods[1:]:
            out = direct_sum(out, m)
        if label:
            object.__setattr__(out, "label", label)
        return out
    if kind == "field-as-bimodule":
        K = _resolve_field(fields, _get(table, "left", where, str), f"{where}.left")
        L = _resolve_field(fields, _get(table, "right", where, str), f"{where}.right")
        if "gen_image" in table:
            iota = FieldHom(L, K, K(_int_list(table["gen_image"], f"{where}.gen_image")))
        else:
            embs = embeddings(L, K)
            idx = _get(table, "embedding_index", where, int, 0)
            if not 0 <= idx < len(embs):
                raise ValidationError(f"{where}.embedding_index: {len(embs)} embeddings available")
            iota = embs[idx]
        return field_as_bimodule(K, L, iota, label)
    if kind == "simple":
        K = _resolve_field(fields, _get(table, "field", where, str), f"{where}.field")
        tower = _get(table, "tower", where, dict)
        g = _get(tower, "modulus", f"{where}.tower", list)
        E = make_tower(K, [_int_list(c, f"{where}.tower.modulus") for c in g], tower.get("label", "E"))
        img = _get(table, "gen_image", where, list)
        lam = FieldHom(K, E, E([_int_list(c, f"{where}.gen_image") for c in img]))
        return simple_from_embedding(K, E, lam, label)
    # raw
    K = _resolve_field(fields, _get(table, "left", where, str), f"{where}.left")
    L = _resolve_field(fields, _get(table, "right", where, str), f"{where}.right")
    X = [_int_list(r, f"{where}.left_gen") for r in _get(table, "left_gen", where, list)]
    Y = [_int_list(r, f"{where}.right_gen") for r in _get(table, "right_gen", where, list)]
    return Bimodule(K, L, K.base.array(X), K.base.array(Y), label or "raw")


def parse_spec(text: str) -> InstanceSpec:
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ParseError(str(exc)) from None
    _check_no_floats(doc)
    F = _parse_base(doc)
    fields = _parse_fields(doc, F)
    table = _get(doc, "bimodule", "document", dict)
    try:
        N = _build_bimodule(table, fields, "bimodule")
    except ValidationError:
        raise
    except (NcsymError, ValueError) as exc:
        raise ValidationError(f"bimodule: {exc}") from None
    expect = doc.get("expect", {})
    if "dims" in expect:
        declared = tuple(_int_list(expect["dims"], "expect.dims"))
        if declared != N.dims:
            raise ValidationError(f"expect.dims: declared {declared}, computed {N.dims}")
    budgets = doc.get("budgets", {})
    hints = table.get("factor_hints")
    if hints is not None:
        hints = [[_int_list(c, "bimodule.factor_hints") for c in g] for g in hints]
    return InstanceSpec(
        label=_get(doc, "label", "document", str, "instance"),
        seed=_get(doc, "seed", "document", str, "0"),
        base=F,
        fields=fields,
        bimodule=N,
        dims=N.dims,
        enumeration_budget=_get(budgets, "enumeration", "budgets", int, 10 ** 6),
        max_span=_get(budgets, "max_span", "budgets", int, 4),
        factor_hints=hints,
        raw=doc,
    )


def load_spec(path) -> InstanceSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return parse_spec(text)
