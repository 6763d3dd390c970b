"""Semantic lexicon: icon senses with intrinsic features and case structures.

An icon sense carries a set of attribute/value features describing what the
concept is, and optionally an ordered valency frame of case slots.  Each
slot names a semantic role (agent, object, goal, ...) and the selectional
features its filler is expected to match.  An entry is predicative exactly
when its frame is non-empty.

Lexicon files are JSON: a top-level ``icons`` map plus an optional ``meta``
object.  Feature values are written either as bare numbers (integers must
be +1 or -1, any decimal literal is read as real-valued) or as explicit
``{"v": 0.5, "kind": "real"}`` objects.  ``data/lexicon.schema.json`` is
the formal schema; ``micro`` and ``demo`` are the shipped sample lexicons.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping

from .errors import LexiconError, UnknownIconError

VALUE_KINDS = ("int", "real")
BUILTIN_LEXICONS = ("micro", "demo")

_DEFAULT_ONTOLOGY_NOTE = (
    "flat feature ontology: attribute tokens are opaque and carry no "
    "inheritance relations"
)


@dataclass(frozen=True)
class FeatureValue:
    """Signed magnitude in [-1.0, +1.0], tagged with its kind.

    Integer-kind magnitudes are exactly -1 or +1.  The kind decides which
    branch of the feature-level compatibility rule applies.
    """

    magnitude: float
    kind: str = "int"

    def __post_init__(self):
        if self.kind not in VALUE_KINDS:
            raise ValueError(f"value kind must be one of {VALUE_KINDS}, got {self.kind!r}")
        m = float(self.magnitude)
        if not -1.0 <= m <= 1.0:
            raise ValueError(f"magnitude out of [-1, +1]: {self.magnitude!r}")
        if self.kind == "int" and m not in (-1.0, 1.0):
            raise ValueError(f"integer-kind magnitude must be -1 or +1, got {self.magnitude!r}")
        object.__setattr__(self, "magnitude", m)


@dataclass(frozen=True)
class Feature:
    """One attribute/value pair.  Attributes are case-sensitive tokens."""

    attribute: str
    value: FeatureValue

    def __post_init__(self):
        if not isinstance(self.attribute, str) or not self.attribute:
            raise ValueError("feature attribute must be a non-empty string")


@dataclass(frozen=True)
class FeatureSet:
    """A set of features with pairwise-distinct attributes.

    Features are kept sorted by attribute, which makes serialization
    canonical and equality order-insensitive.
    """

    features: tuple[Feature, ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.features, key=lambda f: f.attribute))
        for left, right in zip(ordered, ordered[1:]):
            if left.attribute == right.attribute:
                raise ValueError(f"duplicate attribute {left.attribute!r} in feature set")
        object.__setattr__(self, "features", ordered)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, object]) -> "FeatureSet":
        return cls(tuple(Feature(attr, _coerce_value(v)) for attr, v in mapping.items()))

    def get(self, attribute: str) -> Feature | None:
        for f in self.features:
            if f.attribute == attribute:
                return f
        return None

    def __iter__(self) -> Iterator[Feature]:
        return iter(self.features)

    def __len__(self) -> int:
        return len(self.features)

    def __contains__(self, attribute: str) -> bool:
        return self.get(attribute) is not None


@dataclass(frozen=True)
class CaseSlot:
    """One case slot of a valency frame: a role name plus the selectional
    features expected from its filler.  An empty filter is not allowed."""

    case_type: str
    selectional: FeatureSet

    def __post_init__(self):
        if not isinstance(self.case_type, str) or not self.case_type:
            raise ValueError("case type must be a non-empty string")
        if len(self.selectional) == 0:
            raise ValueError(f"empty selectional set for case {self.case_type!r}")


@dataclass(frozen=True)
class LexEntry:
    """One icon sense."""

    id: str
    gloss: str
    intrinsic: FeatureSet = FeatureSet()
    case_structure: tuple[CaseSlot, ...] = ()

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("entry id must be a non-empty string")
        seen = set()
        for slot in self.case_structure:
            if slot.case_type in seen:
                raise ValueError(f"duplicate case type {slot.case_type!r} in entry {self.id!r}")
            seen.add(slot.case_type)

    @property
    def predicative(self) -> bool:
        return bool(self.case_structure)

    @property
    def valency(self) -> int:
        return len(self.case_structure)

    def case_slot(self, case_type: str) -> CaseSlot | None:
        for slot in self.case_structure:
            if slot.case_type == case_type:
                return slot
        return None


def is_predicative(entry: LexEntry) -> bool:
    """True when the entry has at least one case slot to fill."""
    return entry.predicative


@dataclass(frozen=True, eq=True)
class Lexicon:
    """Immutable collection of entries indexed by icon id.

    Safe to share across threads once loaded.
    """

    entries: dict[str, LexEntry] = field(default_factory=dict)
    ontology_note: str = _DEFAULT_ONTOLOGY_NOTE

    def __post_init__(self):
        for icon_id, entry in self.entries.items():
            if icon_id != entry.id:
                raise ValueError(f"entry key {icon_id!r} does not match entry id {entry.id!r}")

    def lookup(self, icon_id: str) -> LexEntry:
        try:
            return self.entries[icon_id]
        except KeyError:
            raise UnknownIconError(icon_id) from None

    def __contains__(self, icon_id: str) -> bool:
        return icon_id in self.entries

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    __hash__ = None  # dict field; identity hashing would be misleading


def _coerce_value(value: object) -> FeatureValue:
    if isinstance(value, FeatureValue):
        return value
    if isinstance(value, bool):
        raise ValueError("feature values must be numbers, not booleans")
    if isinstance(value, int):
        return FeatureValue(float(value), "int")
    if isinstance(value, float):
        return FeatureValue(value, "real")
    raise ValueError(f"cannot read a feature value from {value!r}")


# -- loading ----------------------------------------------------------------


def _reject_duplicate_keys(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise LexiconError(f"duplicate key {key!r}")
        out[key] = value
    return out


def loads_lexicon(text: str) -> Lexicon:
    """Parse a JSON lexicon document.  Duplicate keys anywhere (entry ids,
    attributes) are rejected rather than silently collapsed."""
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise LexiconError(f"invalid JSON: {exc}") from None
    return lexicon_from_dict(doc)


def load_lexicon(path: str | Path) -> Lexicon:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconError(f"cannot read lexicon file: {exc}", str(p)) from None
    return loads_lexicon(text)


def builtin_lexicon(name: str) -> Lexicon:
    """Load one of the shipped sample lexicons ('micro' or 'demo')."""
    if name not in BUILTIN_LEXICONS:
        raise LexiconError(f"no builtin lexicon named {name!r} (have: {', '.join(BUILTIN_LEXICONS)})")
    text = resources.files("iconparse.data").joinpath(f"{name}_lexicon.json").read_text("utf-8")
    return loads_lexicon(text)


def lexicon_from_dict(doc: object) -> Lexicon:
    if not isinstance(doc, dict):
        raise LexiconError("lexicon document must be a JSON object")
    unknown = set(doc) - {"icons", "meta"}
    if unknown:
        raise LexiconError(f"unknown top-level keys: {sorted(unknown)}")
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise LexiconError("'meta' must be an object", "meta")
    note = meta.get("ontology_note", _DEFAULT_ONTOLOGY_NOTE)
    if not isinstance(note, str):
        raise LexiconError("'ontology_note' must be a string", "meta.ontology_note")
    icons = doc.get("icons", {})
    if not isinstance(icons, dict):
        raise LexiconError("'icons' must be an object", "icons")

    entries: dict[str, LexEntry] = {}
    for icon_id, node in icons.items():
        path = f"icons.{icon_id}"
        if not isinstance(icon_id, str) or not icon_id:
            raise LexiconError("icon ids must be non-empty strings", "icons")
        if not isinstance(node, dict):
            raise LexiconError("entry must be an object", path)
        extra = set(node) - {"gloss", "intrinsic", "cases"}
        if extra:
            raise LexiconError(f"unknown entry keys: {sorted(extra)}", path)
        gloss = node.get("gloss")
        if not isinstance(gloss, str) or not gloss:
            raise LexiconError("missing or empty 'gloss'", path)
        intrinsic = _feature_set_from_node(node.get("intrinsic", {}), f"{path}.intrinsic")
        cases_node = node.get("cases", [])
        if not isinstance(cases_node, list):
            raise LexiconError("'cases' must be an array", f"{path}.cases")
        slots: list[CaseSlot] = []
        seen_cases: set[str] = set()
        for i, case_node in enumerate(cases_node):
            cpath = f"{path}.cases[{i}]"
            if not isinstance(case_node, dict):
                raise LexiconError("case slot must be an object", cpath)
            extra = set(case_node) - {"case", "select"}
            if extra:
                raise LexiconError(f"unknown case-slot keys: {sorted(extra)}", cpath)
            case_type = case_node.get("case")
            if not isinstance(case_type, str) or not case_type:
                raise LexiconError("missing or empty 'case'", cpath)
            if case_type in seen_cases:
                raise LexiconError(f"duplicate case type {case_type!r}", cpath)
            seen_cases.add(case_type)
            select = _feature_set_from_node(case_node.get("select", {}), f"{cpath}.select")
            if len(select) == 0:
                raise LexiconError("empty selectional set", f"{cpath}.select")
            slots.append(CaseSlot(case_type, select))
        try:
            entries[icon_id] = LexEntry(icon_id, gloss, intrinsic, tuple(slots))
        except ValueError as exc:
            raise LexiconError(str(exc), path) from None
    return Lexicon(entries, note)


def _feature_set_from_node(node: object, path: str) -> FeatureSet:
    if not isinstance(node, dict):
        raise LexiconError("feature set must be an object of attribute -> value", path)
    features = []
    for attr, value_node in node.items():
        if not isinstance(attr, str) or not attr:
            raise LexiconError("attributes must be non-empty strings", path)
        features.append(Feature(attr, _value_from_node(value_node, f"{path}.{attr}")))
    try:
        return FeatureSet(tuple(features))
    except ValueError as exc:
        raise LexiconError(str(exc), path) from None


def _value_from_node(node: object, path: str) -> FeatureValue:
    if isinstance(node, bool):
        raise LexiconError("feature values must be numbers, not booleans", path)
    if isinstance(node, int):
        magnitude, kind = node, "int"
    elif isinstance(node, float):
        magnitude, kind = node, "real"
    elif isinstance(node, dict):
        if set(node) != {"v", "kind"}:
            raise LexiconError("explicit values need exactly the keys 'v' and 'kind'", path)
        magnitude, kind = node["v"], node["kind"]
        if isinstance(magnitude, bool) or not isinstance(magnitude, (int, float)):
            raise LexiconError("'v' must be a number", path)
        if kind not in VALUE_KINDS:
            raise LexiconError(f"'kind' must be one of {VALUE_KINDS}", path)
    else:
        raise LexiconError(f"cannot read a feature value from {node!r}", path)
    try:
        return FeatureValue(float(magnitude), kind)
    except ValueError as exc:
        raise LexiconError(str(exc), path) from None


# -- serialization -----------------------------------------------------------


def serialize_lexicon(lexicon: Lexicon) -> dict:
    """Canonical document form: entries sorted by id, attributes by token,
    integer-kind values as bare ints and real-kind values as bare floats."""
    icons = {}
    for icon_id in sorted(lexicon.entries):
        entry = lexicon.entries[icon_id]
        icons[icon_id] = {
            "gloss": entry.gloss,
            "intrinsic": _features_to_node(entry.intrinsic),
            "cases": [
                {"case": slot.case_type, "select": _features_to_node(slot.selectional)}
                for slot in entry.case_structure
            ],
        }
    return {"meta": {"ontology_note": lexicon.ontology_note}, "icons": icons}


def _features_to_node(features: FeatureSet) -> dict:
    node = {}
    for f in features:
        if f.value.kind == "int":
            node[f.attribute] = int(f.value.magnitude)
        else:
            node[f.attribute] = float(f.value.magnitude)
    return node


def dumps_lexicon(lexicon: Lexicon, indent: int | None = 2) -> str:
    return json.dumps(serialize_lexicon(lexicon), indent=indent)
