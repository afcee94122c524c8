"""Label inventories, the subtype-to-role table, and duration-scale arithmetic."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Tuple

from .model import MATRES_LABELS, TBDENSE_LABELS, DurationCategory


class OntologyError(ValueError):
    pass


class RelationLabelSet(Enum):
    MATRES = "MATRES"
    TBDENSE = "TBDENSE"

    @property
    def labels(self):
        return MATRES_LABELS if self is RelationLabelSet.MATRES else TBDENSE_LABELS


ELEVEN_CATEGORY_SCALE: Tuple[DurationCategory, ...] = tuple(DurationCategory)
# The seven-category scale is the contiguous middle slice, seconds..years.
SEVEN_CATEGORY_SCALE: Tuple[DurationCategory, ...] = tuple(
    c for c in DurationCategory if 1 <= c.rank <= 7
)


def duration_distance(a: DurationCategory, b: DurationCategory) -> int:
    """Absolute rank distance between two duration categories."""
    return abs(a.rank - b.rank)


def clamp_to_seven(category: DurationCategory) -> DurationCategory:
    """Map an eleven-scale category onto the seven-category scale.

    Out-of-range ranks clamp to the nearest in-range category, which
    preserves the ordering.
    """
    rank = min(max(category.rank, SEVEN_CATEGORY_SCALE[0].rank), SEVEN_CATEGORY_SCALE[-1].rank)
    return DurationCategory(rank)


@dataclass(frozen=True)
class Ontology:
    """Validated label inventories driving extraction and decoding.

    Order of the declared names is preserved because it fixes the label
    indexing used by score bundles.
    """

    entity_types: Tuple[str, ...]
    event_subtypes: Tuple[str, ...]
    argument_roles: Tuple[str, ...]
    valid_roles: Mapping[str, frozenset]
    relation_labels: RelationLabelSet = RelationLabelSet.MATRES

    def valid_roles_for(self, subtype: str) -> frozenset:
        """Role set configured for a subtype; unknown subtypes are an error."""
        if subtype not in self.valid_roles:
            raise OntologyError(f"unknown event subtype {subtype!r}")
        return self.valid_roles[subtype]

    def entity_label_list(self):
        labels = ["O"]
        for t in self.entity_types:
            labels.extend((f"B-{t}", f"I-{t}"))
        return labels

    def trigger_label_list(self):
        return ["O"] + list(self.event_subtypes)

    def argument_label_list(self):
        labels = ["O"]
        for r in self.argument_roles:
            labels.extend((f"B-{r}", f"I-{r}"))
        return labels


def _check_unique(kind, names):
    seen = set()
    for name in names:
        if name in seen:
            raise OntologyError(f"duplicate {kind} {name!r}")
        seen.add(name)


def load_ontology(source) -> Ontology:
    """Load an ontology from a mapping, a JSON file path, or a JSON string.

    All cross-references are resolved: every ``valid_roles`` key must be a
    declared subtype and every referenced role a declared role.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        if path.exists():
            raw = json.loads(path.read_text(encoding="utf-8"))
        else:
            raw = json.loads(str(source))
    elif isinstance(source, Mapping):
        raw = source
    else:
        raise OntologyError(f"unsupported ontology source {type(source).__name__}")

    try:
        entity_types = tuple(raw["entity_types"])
        event_subtypes = tuple(raw["event_subtypes"])
        argument_roles = tuple(raw["argument_roles"])
        valid_roles_raw = dict(raw.get("valid_roles", {}))
    except (KeyError, TypeError) as exc:
        raise OntologyError(f"malformed ontology config: {exc}") from exc

    _check_unique("entity type", entity_types)
    _check_unique("event subtype", event_subtypes)
    _check_unique("argument role", argument_roles)

    subtype_set = set(event_subtypes)
    role_set = set(argument_roles)
    valid_roles = {}
    for subtype, roles in valid_roles_raw.items():
        if subtype not in subtype_set:
            raise OntologyError(f"valid_roles references unknown subtype {subtype!r}")
        for role in roles:
            if role not in role_set:
                raise OntologyError(f"valid_roles references unknown role {role!r}")
        valid_roles[subtype] = frozenset(roles)
    for subtype in event_subtypes:
        valid_roles.setdefault(subtype, frozenset())

    label_set_name = raw.get("relation_labels", "MATRES")
    try:
        label_set = RelationLabelSet(label_set_name)
    except ValueError:
        raise OntologyError(f"unknown relation label set {label_set_name!r}") from None

    return Ontology(
        entity_types=entity_types,
        event_subtypes=event_subtypes,
        argument_roles=argument_roles,
        valid_roles=valid_roles,
        relation_labels=label_set,
    )


def ontology_to_dict(ontology: Ontology) -> dict:
    """Inverse of :func:`load_ontology` for valid ontologies."""
    return {
        "entity_types": list(ontology.entity_types),
        "event_subtypes": list(ontology.event_subtypes),
        "argument_roles": list(ontology.argument_roles),
        "valid_roles": {
            subtype: sorted(ontology.valid_roles[subtype]) for subtype in ontology.event_subtypes
        },
        "relation_labels": ontology.relation_labels.value,
    }


def _load_packaged(name: str) -> dict:
    with resources.files("eventpipe.data").joinpath(name).open("r", encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def default_ontology() -> Ontology:
    """The shipped ACE-style ontology: 7 entity types, 33 subtypes, 22 roles."""
    return load_ontology(_load_packaged("ace_ontology.json"))


@lru_cache(maxsize=None)
def biomedical_ontology() -> Ontology:
    """Small molecular-event ontology used by the biomedical domain."""
    return load_ontology(_load_packaged("bio_ontology.json"))
