import pytest

from eventpipe.ace import (
    ScoreBundle,
    apply_decoding_constraints,
    decode_bio,
    extract_ace_events,
    greedy_decode,
    verify_constraints,
    viterbi_bio,
)
from eventpipe.model import EntityMention, Span
from eventpipe.ontology import load_ontology
from eventpipe.tokenizer import tokenize

from .conftest import GOVERNOR_SENTENCE, random_instance
from .oracles import (
    bio_spans,
    enumerate_argmax,
    enumerate_argmax_bio_valid,
    reference_extract,
)


def as_comparable(entities, events):
    entity_keys = tuple(
        (e.entity_type, e.span.token_start, e.span.token_end) for e in entities
    )
    event_keys = tuple(
        (
            ev.subtype,
            ev.trigger.token_start,
            ev.trigger.token_end,
            tuple((a.role, a.span.token_start, a.span.token_end) for a in ev.arguments),
        )
        for ev in events
    )
    return entity_keys, event_keys


class TestDecodeBio:
    def test_simple_span(self):
        assert decode_bio(["B-person", "I-person", "O"]) == [("person", (0, 2))]

    def test_all_outside(self):
        assert decode_bio(["O", "O", "O"]) == []

    def test_stray_inside_repaired(self):
        # hand-traced: stray I starts a span, exactly as if it were B
        assert decode_bio(["I-person", "O", "B-gpe"]) == [
            ("person", (0, 1)),
            ("gpe", (2, 3)),
        ]

    def test_adjacent_b_tags_split(self):
        assert decode_bio(["B-x", "B-x", "I-x"]) == [("x", (0, 1)), ("x", (1, 3))]

    def test_type_switch_inside(self):
        assert decode_bio(["B-a", "I-b"]) == [("a", (0, 1)), ("b", (1, 2))]

    def test_matches_independent_span_former(self):
        import random

        rng = random.Random(7)
        labels = ["O", "B-a", "I-a", "B-b", "I-b"]
        for _ in range(300):
            sequence = [rng.choice(labels) for _ in range(rng.randint(0, 8))]
            expected = [(t, (s, e)) for t, s, e in bio_spans(sequence)]
            assert decode_bio(sequence) == expected


class TestConstraintMasks:
    @pytest.fixture
    def setting(self, synthetic_ontology):
        document, bundle, _, _ = random_instance(424242)
        return document, bundle

    def test_trigger_zeroed_inside_entity(self, synthetic_ontology):
        _, bundle, _, _ = random_instance(11)
        n = bundle.n_tokens
        entities = [EntityMention(Span(0, 0, 1), "alpha")]
        ontology = load_ontology(
            {
                "entity_types": ["alpha", "beta"],
                "event_subtypes": list(bundle.trigger_labels[1:]),
                "argument_roles": ["r1", "r2", "r3", "r4"],
                "valid_roles": {},
            }
        )
        masked = apply_decoding_constraints(bundle, entities, ontology)
        for label, p in zip(masked.trigger_labels, masked.trigger_scores[0]):
            if label != "O":
                assert p == 0.0
        # token 0's O score is untouched
        assert masked.trigger_scores[0][0] == bundle.trigger_scores[0][0]

    def test_argument_zeroed_outside_entities(self, synthetic_ontology):
        _, bundle, _, ontology = random_instance(12)
        masked = apply_decoding_constraints(bundle, [], ontology)
        subtype = ontology.event_subtypes[0]
        matrix = masked.argument_matrix(0, subtype)
        for row in matrix:
            for label, p in zip(masked.argument_labels, row):
                if label != "O":
                    assert p == 0.0

    def test_invalid_roles_zeroed(self):
        ontology = load_ontology(
            {
                "entity_types": ["alpha"],
                "event_subtypes": ["T:One"],
                "argument_roles": ["r1", "r2"],
                "valid_roles": {"T:One": ["r1"]},
            }
        )
        labels = ontology.argument_label_list()
        uniform = [1.0 / len(labels)] * len(labels)
        bundle = ScoreBundle(
            entity_labels=ontology.entity_label_list(),
            entity_scores=[[0.2, 0.4, 0.4]],
            trigger_labels=ontology.trigger_label_list(),
            trigger_scores=[[0.5, 0.5]],
            argument_labels=labels,
            argument_scores={(0, "T:One"): [uniform]},
        )
        entities = [EntityMention(Span(0, 0, 1), "alpha")]
        masked = apply_decoding_constraints(bundle, entities, ontology)
        row = masked.argument_matrix(0, "T:One")[0]
        by_label = dict(zip(labels, row))
        assert by_label["B-r1"] > 0 and by_label["I-r1"] > 0
        assert by_label["B-r2"] == 0.0 and by_label["I-r2"] == 0.0

    def test_mask_keeps_unconstrained_argmax(self):
        for seed in range(40):
            document, bundle, _, ontology = random_instance(1000 + seed)
            entity_labels = greedy_decode(bundle.entity_scores, bundle.entity_labels)
            entities = [
                EntityMention(Span(0, s, e), t) for t, (s, e) in decode_bio(entity_labels)
            ]
            covered = {t for ent in entities for t in ent.span.tokens()}
            masked = apply_decoding_constraints(bundle, entities, ontology)
            raw_argmax = greedy_decode(bundle.trigger_scores, bundle.trigger_labels)
            masked_argmax = greedy_decode(masked.trigger_scores, masked.trigger_labels)
            for t in range(bundle.n_tokens):
                if t not in covered:
                    assert raw_argmax[t] == masked_argmax[t]

    def test_label_inventory_mismatch_rejected(self, synthetic_ontology):
        bundle = ScoreBundle(
            entity_labels=["O", "B-unknown"],
            entity_scores=[[0.5, 0.5]],
            trigger_labels=["O"],
            trigger_scores=[[1.0]],
            argument_labels=["O"],
            argument_scores={},
        )
        with pytest.raises(ValueError, match="unknown"):
            apply_decoding_constraints(bundle, [], synthetic_ontology)


class TestExtraction:
    def test_governor_sentence_fixture(self, registry):
        backends = registry.get("news")
        document = tokenize(GOVERNOR_SENTENCE)
        bundle = backends.ace.score_sentence(document, 0)
        entities, events = extract_ace_events(document, 0, bundle, backends.ontology)
        surfaces = {document.span_surface(e.span): e.entity_type for e in entities}
        assert surfaces["New York"] == "geo-political-entity"
        assert surfaces["counties"] == "geo-political-entity"
        assert surfaces["George Pataki"] == "person"
        assert len(events) == 1
        event = events[0]
        assert event.subtype == "Movement:Transport"
        assert document.span_surface(event.trigger) == "toured"
        arguments = {a.role: document.span_surface(a.span) for a in event.arguments}
        assert arguments == {"artifact": "George Pataki", "destination": "counties"}
        assert verify_constraints(entities, events, backends.ontology) == []

    def test_lexicon_arguments_coincide_with_entity_spans(self, registry):
        texts = [
            GOVERNOR_SENTENCE,
            "The United States is not considering sending troops to Mozambique.",
            "Protesters attacked a convoy near the border while police arrested the organizers.",
        ]
        backends = registry.get("news")
        for text in texts:
            document = tokenize(text)
            for sentence_index in range(document.n_sentences):
                bundle = backends.ace.score_sentence(document, sentence_index)
                entities, events = extract_ace_events(
                    document, sentence_index, bundle, backends.ontology
                )
                entity_spans = {(e.span.token_start, e.span.token_end) for e in entities}
                for event in events:
                    for arg in event.arguments:
                        assert (arg.span.token_start, arg.span.token_end) in entity_spans

    def test_no_triggers_no_events(self, synthetic_ontology):
        document = tokenize("w0 w1")
        labels = synthetic_ontology.trigger_label_list()
        o_row = [1.0] + [0.0] * (len(labels) - 1)
        entity_labels = synthetic_ontology.entity_label_list()
        calls = []

        def arguments_never_called(pos, subtype):
            calls.append((pos, subtype))
            return None

        bundle = ScoreBundle(
            entity_labels=entity_labels,
            entity_scores=[[1.0] + [0.0] * (len(entity_labels) - 1)] * 2,
            trigger_labels=labels,
            trigger_scores=[o_row, o_row],
            argument_labels=synthetic_ontology.argument_label_list(),
            argument_scores=arguments_never_called,
        )
        entities, events = extract_ace_events(document, 0, bundle, synthetic_ontology)
        assert events == []
        assert calls == []  # no argument decoding performed

    def test_multi_token_trigger_run(self, synthetic_ontology):
        document = tokenize("w0 w1 w2")
        trigger_labels = synthetic_ontology.trigger_label_list()
        hit = [0.05] * len(trigger_labels)
        hit[trigger_labels.index("T:Three")] = 1 - 0.05 * (len(trigger_labels) - 1)
        miss = [1.0 - 0.05 * (len(trigger_labels) - 1)] + [0.05] * (len(trigger_labels) - 1)
        entity_labels = synthetic_ontology.entity_label_list()
        o_entity = [1.0] + [0.0] * (len(entity_labels) - 1)
        bundle = ScoreBundle(
            entity_labels=entity_labels,
            entity_scores=[o_entity] * 3,
            trigger_labels=trigger_labels,
            trigger_scores=[hit, hit, miss],
            argument_labels=synthetic_ontology.argument_label_list(),
            argument_scores={},
        )
        _, events = extract_ace_events(document, 0, bundle, synthetic_ontology)
        assert [(e.trigger.token_start, e.trigger.token_end) for e in events] == [(0, 2)]

    def test_matches_enumeration_oracle(self):
        for seed in range(200):
            document, bundle, bundle_dict, ontology = random_instance(seed)
            entities, events = extract_ace_events(document, 0, bundle, ontology)
            expected = reference_extract(bundle_dict, ontology.valid_roles)
            assert as_comparable(entities, events) == expected, f"seed {seed}"

    def test_verifier_accepts_all_outputs(self):
        for seed in range(200):
            document, bundle, _, ontology = random_instance(10_000 + seed)
            entities, events = extract_ace_events(document, 0, bundle, ontology)
            assert verify_constraints(entities, events, ontology) == []

    def test_verifier_flags_planted_violations(self, synthetic_ontology):
        from eventpipe.model import Argument, EventMention

        entities = [EntityMention(Span(0, 0, 2), "alpha")]
        trigger_inside = EventMention("x", Span(0, 1, 2), "T:One")
        bad_role = EventMention(
            "y", Span(0, 3, 4), "T:Three", arguments=[Argument("r2", Span(0, 0, 2))]
        )
        arg_outside = EventMention(
            "z", Span(0, 3, 4), "T:One", arguments=[Argument("r1", Span(0, 4, 5))]
        )
        violations = verify_constraints(
            entities, [trigger_inside, bad_role, arg_outside], synthetic_ontology
        )
        assert len(violations) == 3


class TestViterbi:
    def test_matches_bio_valid_enumeration(self):
        for seed in range(150):
            _, bundle, _, _ = random_instance(20_000 + seed)
            labels = bundle.entity_labels
            expected = enumerate_argmax_bio_valid(bundle.entity_scores, labels)
            assert viterbi_bio(bundle.entity_scores, labels) == expected, f"seed {seed}"

    def test_never_emits_stray_inside(self):
        for seed in range(100):
            _, bundle, _, _ = random_instance(30_000 + seed)
            labels = viterbi_bio(bundle.entity_scores, bundle.entity_labels)
            previous = "O"
            for label in labels:
                if label.startswith("I-"):
                    assert previous in (f"B-{label[2:]}", label)
                previous = label

    def test_extraction_with_viterbi_decoder_verifies(self):
        for seed in range(60):
            document, bundle, _, ontology = random_instance(40_000 + seed)
            entities, events = extract_ace_events(
                document, 0, bundle, ontology, decoder="viterbi"
            )
            assert verify_constraints(entities, events, ontology) == []


class TestGreedyOracleAgreement:
    def test_greedy_equals_unrestricted_enumeration(self):
        # per-token argmax is exactly the product-maximal unrestricted sequence
        for seed in range(100):
            _, bundle, _, _ = random_instance(50_000 + seed)
            assert greedy_decode(bundle.entity_scores, bundle.entity_labels) == (
                enumerate_argmax(bundle.entity_scores, bundle.entity_labels)
            )


class TestFixtureFormat:
    def test_round_trip_through_fixture_json(self, synthetic_ontology, tmp_path):
        import json

        document, bundle, bundle_dict, ontology = random_instance(5)
        fixture = {
            "sentences": [
                {
                    "entity_labels": list(bundle.entity_labels),
                    "entity_scores": [list(r) for r in bundle.entity_scores],
                    "trigger_labels": list(bundle.trigger_labels),
                    "trigger_scores": [list(r) for r in bundle.trigger_scores],
                    "argument_labels": list(bundle.argument_labels),
                    "argument_scores": {
                        f"{pos}:{subtype}": matrix
                        for (pos, subtype), matrix in bundle_dict["argument_scores"].items()
                    },
                }
            ]
        }
        path = tmp_path / "bundle.json"
        path.write_text(json.dumps(fixture), encoding="utf-8")
        loaded = ScoreBundle.from_fixture(str(path))[0]
        entities_a, events_a = extract_ace_events(document, 0, bundle, ontology)
        entities_b, events_b = extract_ace_events(document, 0, loaded, ontology)
        assert as_comparable(entities_a, events_a) == as_comparable(entities_b, events_b)

    def test_missing_argument_matrix_decodes_empty(self, synthetic_ontology):
        document = tokenize("w0")
        trigger_labels = synthetic_ontology.trigger_label_list()
        hit = [0.0] * len(trigger_labels)
        hit[trigger_labels.index("T:One")] = 1.0
        entity_labels = synthetic_ontology.entity_label_list()
        bundle = ScoreBundle(
            entity_labels=entity_labels,
            entity_scores=[[1.0] + [0.0] * (len(entity_labels) - 1)],
            trigger_labels=trigger_labels,
            trigger_scores=[hit],
            argument_labels=synthetic_ontology.argument_label_list(),
            argument_scores={},
        )
        _, events = extract_ace_events(document, 0, bundle, synthetic_ontology)
        assert len(events) == 1 and events[0].arguments == ()
