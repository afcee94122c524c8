"""Domain registry: one complete backend set per supported text domain.

A new domain plugs in by replacing any subset of slots and inheriting the
rest from the news defaults, so a specialized event extractor can be dropped
in without touching the other stages.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Dict, Mapping, Sequence, Tuple

from .ace import AceBackend, LexiconAceBackend
from .duration import DurationBackend, LexiconDurationBackend
from .negation import CueBackend, LexiconCueBackend, RightwardScopeBackend, ScopeBackend
from .ontology import Ontology, biomedical_ontology, default_ontology, load_ontology
from .triggers import LexiconTriggerBackend, TriggerRelationBackend

DEFAULT_DOMAIN = "news"


class UnknownDomainError(ValueError):
    def __init__(self, domain: str, registered: Sequence[str]):
        super().__init__(
            f"unknown domain {domain!r}; registered domains: {', '.join(sorted(registered))}"
        )
        self.domain = domain
        self.registered = sorted(registered)


class IncompleteSlotsError(ValueError):
    pass


@dataclass(frozen=True)
class DomainBackends:
    """The full backend slot set one domain needs."""

    ontology: Ontology
    ace: AceBackend
    triggers: TriggerRelationBackend
    duration: DurationBackend
    cues: CueBackend
    scopes: ScopeBackend
    examples: Tuple[str, ...] = ()


class BackendRegistry:
    """Maps domain names to backend sets; the news domain is always present."""

    def __init__(self, news: DomainBackends):
        self._domains: Dict[str, DomainBackends] = {DEFAULT_DOMAIN: news}

    def domains(self) -> Tuple[str, ...]:
        return tuple(sorted(self._domains))

    def get(self, domain: str) -> DomainBackends:
        if domain not in self._domains:
            raise UnknownDomainError(domain, self.domains())
        return self._domains[domain]

    def register(self, domain: str, backends: DomainBackends) -> "BackendRegistry":
        """Register or replace a domain with a complete slot set."""
        self._domains[domain] = backends
        return self


def register_backend(
    registry: BackendRegistry, domain: str, inherit: bool = False, **slots
) -> BackendRegistry:
    """Register a domain from individual slots.

    Without ``inherit`` every slot must be given; with it, missing slots
    fall back to the news defaults.  Re-registration replaces.
    """
    slot_names = [f.name for f in fields(DomainBackends)]
    unknown = sorted(set(slots) - set(slot_names))
    if unknown:
        raise IncompleteSlotsError(f"unknown slots: {', '.join(unknown)}")
    if inherit:
        base = registry.get(DEFAULT_DOMAIN)
        return registry.register(domain, replace(base, **slots))
    missing = [
        name for name in slot_names if name != "examples" and name not in slots
    ]
    if missing:
        raise IncompleteSlotsError(
            f"missing slots for domain {domain!r}: {', '.join(missing)} "
            "(pass inherit=True to fall back to news defaults)"
        )
    return registry.register(domain, DomainBackends(**slots))


def _packaged(name: str) -> dict:
    with resources.files("eventpipe.data").joinpath(name).open("r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_json(source) -> dict:
    if isinstance(source, Mapping):
        return dict(source)
    return json.loads(Path(source).read_text(encoding="utf-8"))


def _build_domain(
    ontology: Ontology,
    extraction_config: Mapping,
    trigger_config: Mapping,
    duration_config: Mapping,
    cue_config: Mapping,
    examples: Sequence[str],
) -> DomainBackends:
    return DomainBackends(
        ontology=ontology,
        ace=LexiconAceBackend.from_config(ontology, extraction_config),
        triggers=LexiconTriggerBackend.from_config(trigger_config),
        duration=LexiconDurationBackend.from_config(duration_config),
        cues=LexiconCueBackend.from_config(cue_config),
        scopes=RightwardScopeBackend(),
        examples=tuple(examples),
    )


@lru_cache(maxsize=1)
def _default_configs() -> dict:
    return {
        "news_extraction": _packaged("news_extraction.json"),
        "bio_extraction": _packaged("bio_extraction.json"),
        "trigger_lexicon": _packaged("trigger_lexicon.json"),
        "duration_lexicon": _packaged("duration_lexicon.json"),
        "cue_lexicon": _packaged("cue_lexicon.json"),
        "examples": _packaged("examples.json"),
    }


def default_registry() -> BackendRegistry:
    """News and biomedical domains over the shipped deterministic backends."""
    configs = _default_configs()
    news = _build_domain(
        default_ontology(),
        configs["news_extraction"],
        configs["trigger_lexicon"],
        configs["duration_lexicon"],
        configs["cue_lexicon"],
        configs["examples"].get("news", ()),
    )
    registry = BackendRegistry(news)
    bio_ontology = biomedical_ontology()
    bio_trigger_config = dict(configs["trigger_lexicon"])
    bio_trigger_config["triggers"] = list(bio_trigger_config.get("triggers", [])) + list(
        configs["bio_extraction"].get("extra_triggers", [])
    )
    register_backend(
        registry,
        "biomedical",
        inherit=True,
        ontology=bio_ontology,
        ace=LexiconAceBackend.from_config(bio_ontology, configs["bio_extraction"]),
        triggers=LexiconTriggerBackend.from_config(bio_trigger_config),
        examples=tuple(configs["examples"].get("biomedical", ())),
    )
    return registry


def registry_from_config(source) -> BackendRegistry:
    """Build a registry from a configuration file or mapping.

    The config may override, per domain, the ontology and any lexicon file;
    unspecified domains and slots keep the shipped defaults.  Schema::

        {"domains": {"<name>": {
            "ontology": <path>, "extraction": <path>,
            "triggers": <path>, "duration": <path>, "cues": <path>,
            "examples": [<sentence>, ...]}}}
    """
    config = _load_json(source)
    registry = default_registry()
    for domain, overrides in config.get("domains", {}).items():
        try:
            base = registry.get(domain)
        except UnknownDomainError:
            base = registry.get(DEFAULT_DOMAIN)
        ontology = (
            load_ontology(_load_json(overrides["ontology"]))
            if "ontology" in overrides
            else base.ontology
        )
        slots = {"ontology": ontology}
        if "extraction" in overrides or "ontology" in overrides:
            extraction = (
                _load_json(overrides["extraction"])
                if "extraction" in overrides
                else _default_configs()["news_extraction"]
            )
            slots["ace"] = LexiconAceBackend.from_config(ontology, extraction)
        if "triggers" in overrides:
            slots["triggers"] = LexiconTriggerBackend.from_config(
                _load_json(overrides["triggers"])
            )
        if "duration" in overrides:
            slots["duration"] = LexiconDurationBackend.from_config(
                _load_json(overrides["duration"])
            )
        if "cues" in overrides:
            slots["cues"] = LexiconCueBackend.from_config(_load_json(overrides["cues"]))
        if "examples" in overrides:
            slots["examples"] = tuple(overrides["examples"])
        registry.register(domain, replace(base, **slots))
    return registry
