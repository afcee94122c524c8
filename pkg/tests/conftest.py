import random

import pytest

from eventpipe.ace import ScoreBundle
from eventpipe.ontology import load_ontology
from eventpipe.registry import default_registry
from eventpipe.tokenizer import tokenize

GOVERNOR_SENTENCE = (
    "New York governor George Pataki toured counties that have been declared "
    "disaster areas as the cleanup continues and local crews maintain emergency shelters."
)

MOZAMBIQUE_SENTENCE = "The United States is not considering sending troops to Mozambique."

BREAK_SOON_SENTENCE = "Dr. Porter is now taking a break and will be able to see you soon."
BREAK_CHRISTMAS_SENTENCE = "Dr. Porter is now taking a Christmas break."


@pytest.fixture(scope="session")
def registry():
    return default_registry()


@pytest.fixture(scope="session")
def synthetic_ontology():
    return load_ontology(
        {
            "entity_types": ["alpha", "beta"],
            "event_subtypes": ["T:One", "T:Two", "T:Three"],
            "argument_roles": ["r1", "r2", "r3", "r4"],
            "valid_roles": {
                "T:One": ["r1", "r2"],
                "T:Two": ["r2", "r3", "r4"],
                "T:Three": ["r1"],
            },
        }
    )


def random_ontology(rng: random.Random):
    """Small random ontology within the oracle-suite bounds."""
    entity_types = ["alpha", "beta"][: rng.randint(1, 2)]
    subtypes = ["T:One", "T:Two", "T:Three"][: rng.randint(1, 3)]
    roles = ["r1", "r2", "r3", "r4"][: rng.randint(1, 4)]
    valid_roles = {
        subtype: sorted(rng.sample(roles, rng.randint(0, len(roles))))
        for subtype in subtypes
    }
    return load_ontology(
        {
            "entity_types": entity_types,
            "event_subtypes": subtypes,
            "argument_roles": roles,
            "valid_roles": valid_roles,
        }
    )


def _random_row(rng: random.Random, size: int, sharpen: bool):
    raw = [rng.uniform(0.05, 1.0) for _ in range(size)]
    if sharpen:
        raw[rng.randrange(size)] *= 4.0  # make one label clearly dominant
    total = sum(raw)
    return [v / total for v in raw]


def random_instance(seed: int):
    """One random decoding problem: (document, bundle, bundle_dict, ontology).

    Bounded at 6 tokens, 3 subtypes, 4 roles so exhaustive enumeration stays
    cheap.  All scores are strictly positive, so masked-out labels (exactly
    zero) never tie with allowed ones.
    """
    rng = random.Random(seed)
    ontology = random_ontology(rng)
    n_tokens = rng.randint(1, 6)
    document = tokenize(" ".join(f"w{i}" for i in range(n_tokens)))
    sharpen = rng.random() < 0.5

    entity_labels = ontology.entity_label_list()
    trigger_labels = ontology.trigger_label_list()
    argument_labels = ontology.argument_label_list()

    entity_scores = [_random_row(rng, len(entity_labels), sharpen) for _ in range(n_tokens)]
    trigger_scores = [_random_row(rng, len(trigger_labels), sharpen) for _ in range(n_tokens)]
    argument_scores = {
        (pos, subtype): [
            _random_row(rng, len(argument_labels), sharpen) for _ in range(n_tokens)
        ]
        for pos in range(n_tokens)
        for subtype in ontology.event_subtypes
    }

    bundle = ScoreBundle(
        entity_labels=entity_labels,
        entity_scores=entity_scores,
        trigger_labels=trigger_labels,
        trigger_scores=trigger_scores,
        argument_labels=argument_labels,
        argument_scores=argument_scores,
    )
    bundle_dict = {
        "entity_labels": entity_labels,
        "entity_scores": entity_scores,
        "trigger_labels": trigger_labels,
        "trigger_scores": trigger_scores,
        "argument_labels": argument_labels,
        "argument_scores": argument_scores,
    }
    return document, bundle, bundle_dict, ontology
