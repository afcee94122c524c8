"""Deterministic whitespace-plus-punctuation tokenizer with sentence splitting.

The rules are intentionally simple and fixed: alphanumeric runs (with
internal apostrophes) are words, every other non-space character is its own
token, and "n't" contractions are split Penn-style so negation cues surface
as their own token.  Any callable with the same signature can replace
:func:`tokenize` in the pipeline.
"""

from __future__ import annotations

import re

from .model import Document, Token

_TOKEN = re.compile(r"[A-Za-z0-9]+(?:'[A-Za-z0-9]+)*|[^\sA-Za-z0-9]")
_NT_CONTRACTION = re.compile(r"^([A-Za-z]+)(n't)$", re.IGNORECASE)

_SENTENCE_TERMINATORS = {".", "!", "?"}
# Tokens after which a "." never ends a sentence.
_ABBREVIATIONS = {
    "dr", "mr", "mrs", "ms", "prof", "st", "jr", "sr", "vs", "etc",
    "inc", "co", "corp", "gen", "gov", "sen", "rep", "capt", "lt", "col",
}
_TRAILERS = {'"', "'", ")", "]"}


def _raw_tokens(text: str):
    for match in _TOKEN.finditer(text):
        surface = match.group(0)
        start = match.start()
        contraction = _NT_CONTRACTION.match(surface)
        if contraction:
            stem = contraction.group(1)
            yield Token(stem, start, start + len(stem))
            yield Token(surface[len(stem):], start + len(stem), match.end())
        else:
            yield Token(surface, start, match.end())


def _is_abbreviation(token: Token) -> bool:
    surface = token.surface
    if len(surface) == 1 and surface.isupper():
        return True
    return surface.lower() in _ABBREVIATIONS


def tokenize(text: str) -> Document:
    """Tokenize raw text into a validated :class:`Document`.

    Same text always yields the same token and sentence structure.
    """
    tokens = list(_raw_tokens(text))
    sentences = []
    start = 0
    i = 0
    while i < len(tokens):
        surface = tokens[i].surface
        if surface in _SENTENCE_TERMINATORS:
            if surface == "." and i > start and _is_abbreviation(tokens[i - 1]):
                i += 1
                continue
            # Swallow runs of terminators and closing quotes/brackets.
            j = i
            while j + 1 < len(tokens) and tokens[j + 1].surface in (_SENTENCE_TERMINATORS | _TRAILERS):
                j += 1
            sentences.append((start, j + 1))
            start = j + 1
            i = j + 1
        else:
            i += 1
    if start < len(tokens):
        sentences.append((start, len(tokens)))
    return Document(text=text, tokens=tokens, sentences=sentences)
