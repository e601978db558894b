"""Translate JSON documents into library objects and results back to JSON.

The schema is documented in ``SCHEMA.rst``. Every description is a JSON
object whose single distinguishing key names its kind, e.g.
``{"named": "S3"}`` or ``{"discrete": 3}``.
"""

import enum
import json
import logging
import re

import sympy

from transchromatic import (
    characters,
    groupoids,
    groups,
    linalg,
    linsys,
    spans,
)
from transchromatic.errors import FormatError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

_RATIONAL_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


class GroupKind(enum.Enum):
    TABLE = "mul"
    PERMUTATIONS = "perm_gens"
    NAMED = "named"


class GroupoidKind(enum.Enum):
    GROUP = "group"
    DISCRETE = "discrete"
    ACTION = "action"
    DISJOINT_UNION = "disjoint_union"
    PRODUCT = "product"


class MapKind(enum.Enum):
    TABLES = "objects"
    HOMOMORPHISM = "homomorphism"
    SUBGROUP = "subgroup"
    IDENTITY = "identity"
    TERMINAL = "terminal"


class SpanKind(enum.Enum):
    LEGS = "left"
    FORWARD = "forward"
    BACKWARD = "backward"
    IDENTITY = "identity"
    COMPOSE = "compose"


def _kind_of(data, kinds, what):
    if not isinstance(data, dict):
        raise FormatError(f"{what} must be a JSON object")
    found = [kind for kind in kinds if kind.value in data]
    if len(found) != 1:
        keys = ", ".join(repr(kind.value) for kind in kinds)
        raise FormatError(f"{what} needs exactly one of {keys}")
    return found[0]


def _field(data, key, what):
    try:
        return data[key]
    except (KeyError, TypeError):
        raise FormatError(f"{what} is missing {key!r}")


def _integer(value, what, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{what} must be an integer")
    if minimum is not None and value < minimum:
        raise FormatError(f"{what} must be at least {minimum}")
    return value


def _list(values, what):
    if not isinstance(values, list):
        raise FormatError(f"{what} must be a list")
    return values


def _integers(values, what):
    return [_integer(v, what) for v in _list(values, what)]


def _rows(values, what):
    return [_integers(row, what) for row in _list(values, what)]


def load_document(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON ({exc.msg} at line {exc.lineno})")
    if isinstance(data, dict) and "schema" in data:
        if data["schema"] != SCHEMA_VERSION:
            raise FormatError(f"unsupported schema {data['schema']!r}")
    return data


def to_rational(value):
    if isinstance(value, bool):
        raise FormatError(f"{value!r} is not a rational number")
    if isinstance(value, int):
        return sympy.Rational(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value):
        numerator, _, denominator = value.replace(" ", "").partition("/")
        if denominator and int(denominator) == 0:
            raise FormatError(f"{value!r} has a zero denominator")
        return sympy.Rational(int(numerator), int(denominator or 1))
    raise FormatError(f"{value!r} is not a rational number")


def to_matrix(rows, shape=None):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FormatError("A matrix must be a list of rows")
    entries = [[to_rational(v) for v in row] for row in rows]
    n_rows = len(entries)
    n_cols = len(entries[0]) if entries else (shape[1] if shape else 0)
    if shape is not None and (n_rows, n_cols) != tuple(shape):
        raise FormatError(f"Expected a {shape[0]}x{shape[1]} matrix")
    if any(len(row) != n_cols for row in entries):
        raise FormatError("Matrix rows have different lengths")
    return linalg.matrix(n_rows, n_cols, entries)


def to_group(data):
    kind = _kind_of(data, GroupKind, "Group")
    name = data.get("name")
    if kind is GroupKind.NAMED:
        group = groups.named_group(str(data["named"]))
    elif kind is GroupKind.PERMUTATIONS:
        generators = _rows(_field(data, "perm_gens", "Group"), "Permutation")
        degree = data.get("degree")
        if degree is not None:
            degree = _integer(degree, "Degree", 1)
        group = groups.group_from_permutations(
            generators,
            degree=degree,
            name=name,
        )
    else:
        mul = _rows(data["mul"], "Multiplication row")
        order = data.get("order", len(mul))
        if _integer(order, "Order", 1) != len(mul):
            raise FormatError(f"Order {order} does not match the table")
        group = groups.FiniteGroup(mul, name=name)
    logger.debug(f"Read group of order {group.order}")
    return group


def to_groupoid(data):
    kind = _kind_of(data, GroupoidKind, "Groupoid")
    if kind is GroupoidKind.GROUP:
        return groupoids.delooping(to_group(data["group"]))
    elif kind is GroupoidKind.DISCRETE:
        return groupoids.discrete(_integer(data["discrete"], "Discrete", 0))
    elif kind is GroupoidKind.ACTION:
        return _to_action_groupoid(data["action"])
    elif kind is GroupoidKind.DISJOINT_UNION:
        parts = data["disjoint_union"]
        if not isinstance(parts, list):
            raise FormatError("A disjoint union takes a list of groupoids")
        return groupoids.disjoint_union(to_groupoid(p) for p in parts)
    parts = data["product"]
    if not isinstance(parts, list) or not parts:
        raise FormatError("A product takes a nonempty list of groupoids")
    result = to_groupoid(parts[0])
    for part in parts[1:]:
        result = groupoids.product(result, to_groupoid(part))
    return result


def _to_action_groupoid(data):
    group = to_group(_field(data, "group", "Action"))
    if "table" in data:
        table = _rows(data["table"], "Action row")
        if len(table) != group.order:
            raise FormatError("The action table needs one row per element")
        size = len(table[0]) if table else 0
        if any(len(row) != size for row in table):
            raise FormatError("Action rows have different lengths")
        if any(not 0 <= s < size for row in table for s in row):
            raise FormatError("Action table entry out of range")
        return groupoids.action_groupoid(
            group, range(size), lambda g, s: table[g][s]
        )
    kind = _field(data, "kind", "Action")
    if kind == "conjugation":
        return groupoids.conjugation_groupoid(group)
    elif kind == "translation":
        return groupoids.translation_groupoid(group)
    elif kind == "natural":
        if group.perms is None:
            raise FormatError("A natural action needs a permutation group")
        degree = len(group.perms[0])
        return groupoids.action_groupoid(
            group, range(degree), lambda g, s: group.perms[g][s]
        )
    raise FormatError(f"Unknown action kind {kind!r}")


def to_map(data):
    kind = _kind_of(data, MapKind, "Map")
    if kind is MapKind.TABLES:
        source = to_groupoid(_field(data, "source", "Map"))
        target = to_groupoid(_field(data, "target", "Map"))
        return groupoids.GroupoidMap(
            source,
            target,
            _integers(data["objects"], "Object table"),
            _integers(_field(data, "morphisms", "Map"), "Morphism table"),
        )
    elif kind is MapKind.HOMOMORPHISM:
        hom = data["homomorphism"]
        return groupoids.group_map(
            to_group(_field(hom, "source", "Homomorphism")),
            to_group(_field(hom, "target", "Homomorphism")),
            _integers(_field(hom, "images", "Homomorphism"), "Images"),
        )
    elif kind is MapKind.SUBGROUP:
        group, elements = to_subgroup(data["subgroup"])
        inclusion, _ = characters.inclusion_map(group, elements)
        return inclusion
    elif kind is MapKind.IDENTITY:
        return groupoids.identity_map(to_groupoid(data["identity"]))
    return groupoids.terminal_map(to_groupoid(data["terminal"]))


def to_subgroup(data):
    group = to_group(_field(data, "group", "Subgroup"))
    elements = _integers(_field(data, "elements", "Subgroup"), "Elements")
    return group, elements


def to_rep(data, group):
    if not isinstance(data, dict):
        raise FormatError("A representation must be a JSON object")
    kind = _field(data, "kind", "Representation")
    if kind == "trivial":
        dim = _integer(data.get("dim", 1), "Dim", 0)
        return characters.trivial_rep(group, dim)
    elif kind == "regular":
        return characters.regular_rep(group)
    elif kind == "sign":
        if group.perms is None:
            raise FormatError("A sign representation needs a permutation group")
        return characters.sign_rep(group)
    elif kind == "cosets":
        subgroup = _field(data, "subgroup", "Representation")
        return characters.coset_rep(group, _integers(subgroup, "Elements"))
    elif kind == "permutation":
        table = _rows(
            _field(data, "table", "Representation"), "Permutation row"
        )
        if len(table) != group.order:
            raise FormatError("A permutation table needs one row per element")
        size = len(table[0]) if table else 0
        if any(len(row) != size for row in table):
            raise FormatError("Permutation rows have different lengths")
        if any(not 0 <= i < size for row in table for i in row):
            raise FormatError("Permutation table entry out of range")
        return characters.permutation_rep(
            group, range(size), lambda g, i: table[g][i]
        )
    elif kind == "matrices":
        images = _list(_field(data, "images", "Representation"), "Images")
        images = [to_matrix(m) for m in images]
        return characters.RationalRep(group, images)
    raise FormatError(f"Unknown representation kind {kind!r}")


def to_system(data, base):
    if not isinstance(data, dict):
        raise FormatError("A local system must be a JSON object")
    if "constant" in data:
        return linsys.constant(base, _integer(data["constant"], "Dimension", 0))
    elif "rep" in data:
        group = characters.group_of(base)
        return to_rep(data["rep"], group).to_local_system()
    dims = _integers(_field(data, "dims", "Local system"), "Dimensions")
    mats = _list(_field(data, "mats", "Local system"), "Matrices")
    if len(dims) != len(base.objects) or len(mats) != len(base.morphisms):
        raise FormatError("Local system does not match its groupoid")
    return linsys.LocalSystem(
        base,
        dims,
        [
            to_matrix(m, (dims[base.tgt[a]], dims[base.src[a]]))
            for a, m in enumerate(mats)
        ],
    )


def to_span(data):
    kind = _kind_of(data, SpanKind, "Span")
    if kind is SpanKind.LEGS:
        right = _field(data, "right", "Span")
        return spans.Span(to_map(data["left"]), to_map(right))
    elif kind is SpanKind.FORWARD:
        return spans.span_from_map_fwd(to_map(data["forward"]))
    elif kind is SpanKind.BACKWARD:
        return spans.span_from_map_bwd(to_map(data["backward"]))
    elif kind is SpanKind.IDENTITY:
        return spans.span_identity(to_groupoid(data["identity"]))
    parts = data["compose"]
    if not isinstance(parts, list) or not parts:
        raise FormatError("Compose takes a nonempty list of spans")
    result = to_span(parts[0])
    for part in parts[1:]:
        result = spans.span_compose(result, to_span(part))
    return result


def to_square(data):
    square = _field(data, "square", "Document")
    return groupoids.homotopy_pullback(
        to_map(_field(square, "f", "Square")),
        to_map(_field(square, "g", "Square")),
    )


def format_rational(value):
    return linalg.format_rational(value)


def web_matrix(m):
    return [[format_rational(v) for v in row] for row in linalg.to_rows(m)]


def plain_matrix(m):
    if m.rows == 0:
        return f"[] ({m.rows}x{m.cols})"
    return "\n".join(
        " ".join(format_rational(v) for v in row) for row in linalg.to_rows(m)
    )


def dump(data):
    return json.dumps(data, sort_keys=True, separators=(", ", ": "))
