import json

import pytest

from eventpipe.model import DurationCategory
from eventpipe.pipeline import annotate
from eventpipe.registry import (
    IncompleteSlotsError,
    UnknownDomainError,
    default_registry,
    register_backend,
    registry_from_config,
)

from .conftest import GOVERNOR_SENTENCE


class TestRegistry:
    def test_news_always_registered(self):
        registry = default_registry()
        assert "news" in registry.domains()

    def test_unknown_domain_error_lists_domains(self):
        registry = default_registry()
        with pytest.raises(UnknownDomainError, match="biomedical, news"):
            registry.get("legal")

    def test_register_with_inherit(self, registry):
        local = default_registry()

        class CountingAce:
            def __init__(self, inner):
                self.inner = inner
                self.calls = 0

            def score_sentence(self, document, sentence_index):
                self.calls += 1
                return self.inner.score_sentence(document, sentence_index)

        counting = CountingAce(local.get("news").ace)
        register_backend(local, "finance", inherit=True, ace=counting)
        assert "finance" in local.domains()
        annotate(GOVERNOR_SENTENCE, "finance", local)
        assert counting.calls == 1

    def test_register_without_inherit_requires_all_slots(self):
        local = default_registry()
        with pytest.raises(IncompleteSlotsError, match="duration"):
            register_backend(local, "finance", ace=local.get("news").ace)

    def test_unknown_slot_rejected(self):
        local = default_registry()
        with pytest.raises(IncompleteSlotsError, match="unknown slots"):
            register_backend(local, "finance", inherit=True, model="x")

    def test_reregistration_replaces(self):
        local = default_registry()

        class NoTriggers:
            def event_scores(self, document):
                return [0.0] * len(document.tokens)

            def relation_scores(self, document, pair):
                raise AssertionError("no pairs expected")

        register_backend(local, "news", inherit=True, triggers=NoTriggers())
        result = annotate("Troops arrived in the city.", "news", local)
        # trigger-only path disabled; only lexicon ace events remain
        assert all(e.source.value == "ace" for e in result.events)

    def test_biomedical_registered_by_default(self):
        registry = default_registry()
        backends = registry.get("biomedical")
        assert backends.ontology.event_subtypes[0].startswith("Molecular:")
        assert backends.examples


class TestRegistryFromConfig:
    def test_overrides_duration_lexicon(self, tmp_path):
        duration_path = tmp_path / "duration.json"
        duration_path.write_text(
            json.dumps({"defaults": {"toured": "years"}, "fallback": "minutes"}),
            encoding="utf-8",
        )
        config_path = tmp_path / "config.json"
        config_path.write_text(
            json.dumps({"domains": {"news": {"duration": str(duration_path)}}}),
            encoding="utf-8",
        )
        registry = registry_from_config(str(config_path))
        result = annotate(GOVERNOR_SENTENCE, "news", registry)
        toured = next(
            e for e in result.events
            if result.document.span_surface(e.trigger) == "toured"
        )
        assert toured.duration is DurationCategory.YEARS

    def test_new_domain_from_config(self, tmp_path):
        config_path = tmp_path / "config.json"
        config_path.write_text(
            json.dumps({"domains": {"sports": {"examples": ["The team won."]}}}),
            encoding="utf-8",
        )
        registry = registry_from_config(str(config_path))
        assert "sports" in registry.domains()
        assert registry.get("sports").examples == ("The team won.",)
