"""Independent reference implementations used to check the real decoders.

Everything here is deliberately brute force and shares no code with the
package: sequence argmax literally materializes the product of per-token
scores for every possible label sequence, span forming and constraint
masking are re-derived from their written rules, and rank statistics use
counting instead of sorting.
"""

from __future__ import annotations

import numpy as np


def enumerate_argmax(matrix, labels):
    """Best label sequence by exhaustive enumeration of all |L|^n sequences.

    Sequence score is the product of per-token scores; the first maximum in
    lexicographic order wins, matching first-index argmax per token.
    """
    arr = np.asarray(matrix, dtype=float)
    n, n_labels = arr.shape
    products = np.ones(1)
    for row in arr:
        products = np.multiply.outer(products, row).reshape(-1)
    flat = int(np.argmax(products))
    sequence = []
    for _ in range(n):
        flat, label_index = divmod(flat, n_labels)
        sequence.append(label_index)
    sequence.reverse()
    return [labels[i] for i in sequence]


def enumerate_argmax_bio_valid(matrix, labels):
    """Like enumerate_argmax but restricted to BIO-valid sequences.

    A sequence is valid when every I-x continues a B-x or I-x of the same
    type; sequences violating this are excluded from the maximization.
    """
    arr = np.asarray(matrix, dtype=float)
    n, n_labels = arr.shape

    def needs_previous(j):
        return labels[j].startswith("I-")

    def tag(j):
        return labels[j].split("-", 1)[1] if "-" in labels[j] else None

    transition_ok = np.zeros((n_labels, n_labels), dtype=bool)
    for prev in range(n_labels):
        for cur in range(n_labels):
            if not needs_previous(cur):
                transition_ok[prev, cur] = True
            else:
                transition_ok[prev, cur] = (
                    labels[prev][:2] in ("B-", "I-") and tag(prev) == tag(cur)
                )
    start_ok = np.array([not needs_previous(j) for j in range(n_labels)])

    products = arr[0].copy()
    valid = start_ok.copy()
    for i in range(1, n):
        last = np.arange(products.size) % n_labels  # last label of each prefix
        step_valid = valid[:, None] & transition_ok[last][:, :]
        valid = step_valid.reshape(-1)
        products = np.multiply.outer(products, arr[i]).reshape(-1)
    scored = np.where(valid, products, -1.0)
    flat = int(np.argmax(scored))
    sequence = []
    for _ in range(n):
        flat, label_index = divmod(flat, n_labels)
        sequence.append(label_index)
    sequence.reverse()
    return [labels[i] for i in sequence]


def bio_spans(labels):
    """Typed spans from a BIO sequence, stray I-x treated as a span start."""
    spans = []
    i, n = 0, len(labels)
    while i < n:
        label = labels[i]
        if label == "O":
            i += 1
            continue
        tag = label.split("-", 1)[1]
        j = i + 1
        while j < n and labels[j] == "I-" + tag:
            j += 1
        spans.append((tag, i, j))
        i = j
    return spans


def mask_trigger_matrix(matrix, labels, entity_tokens):
    """Zero subtype labels on tokens covered by an entity."""
    out = [list(row) for row in matrix]
    for t in entity_tokens:
        for j, label in enumerate(labels):
            if label != "O":
                out[t][j] = 0.0
    return out


def mask_argument_matrix(matrix, labels, entity_tokens, allowed_roles):
    """Zero argument labels outside entities and roles invalid for the subtype."""
    out = []
    for i, row in enumerate(matrix):
        new_row = []
        for label, p in zip(labels, row):
            if label == "O":
                new_row.append(p)
                continue
            role = label.split("-", 1)[1]
            if i not in entity_tokens or role not in allowed_roles:
                new_row.append(0.0)
            else:
                new_row.append(p)
        out.append(new_row)
    return out


def trigger_runs(labels):
    """Maximal runs of the same non-O subtype."""
    runs = []
    i, n = 0, len(labels)
    while i < n:
        if labels[i] == "O":
            i += 1
            continue
        j = i + 1
        while j < n and labels[j] == labels[i]:
            j += 1
        runs.append((labels[i], i, j))
        i = j
    return runs


def reference_extract(bundle_dict, valid_roles):
    """Full extraction by enumeration; mirrors the written decode contract.

    ``bundle_dict`` carries plain lists: entity_labels/entity_scores,
    trigger_labels/trigger_scores, argument_labels and argument_scores keyed
    by (position, subtype).  Returns (entities, events) as plain tuples.
    """
    entity_sequence = enumerate_argmax(bundle_dict["entity_scores"], bundle_dict["entity_labels"])
    entities = bio_spans(entity_sequence)
    entity_tokens = {t for _, s, e in entities for t in range(s, e)}

    masked_triggers = mask_trigger_matrix(
        bundle_dict["trigger_scores"], bundle_dict["trigger_labels"], entity_tokens
    )
    trigger_sequence = enumerate_argmax(masked_triggers, bundle_dict["trigger_labels"])

    events = []
    for subtype, start, end in trigger_runs(trigger_sequence):
        matrix = bundle_dict["argument_scores"][(start, subtype)]
        masked = mask_argument_matrix(
            matrix, bundle_dict["argument_labels"], entity_tokens, valid_roles[subtype]
        )
        argument_sequence = enumerate_argmax(masked, bundle_dict["argument_labels"])
        arguments = tuple(
            (role, s, e) for role, s, e in bio_spans(argument_sequence)
        )
        events.append((subtype, start, end, arguments))
    return tuple(entities), tuple(events)


def counting_ranks(values):
    """Average ranks via counting: rank = (#smaller) + (#equal + 1) / 2."""
    return [
        sum(1 for other in values if other < v)
        + (sum(1 for other in values if other == v) + 1) / 2
        for v in values
    ]


def reference_spearman(xs, ys):
    """Rank correlation from the direct formula on counting-based ranks."""
    rx = counting_ranks(list(xs))
    ry = counting_ranks(list(ys))
    n = len(rx)
    mean_x = sum(rx) / n
    mean_y = sum(ry) / n
    num = sum((a - mean_x) * (b - mean_y) for a, b in zip(rx, ry))
    den_x = sum((a - mean_x) ** 2 for a in rx)
    den_y = sum((b - mean_y) ** 2 for b in ry)
    if den_x == 0 or den_y == 0:
        return float("nan")
    return num / (den_x * den_y) ** 0.5
