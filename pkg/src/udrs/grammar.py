"""Tokenizer and chart parser for the fragment.

The grammar is deliberately small: transitive/intransitive clauses,
determiner NPs, names, "that"-complements, and sentence sequencing.  It
produces binary-branching derivation trees typed by construction, which the
semantics interprets bottom-up.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import UDRSError
from .lexicon import Lexicon

SEP = "<sep>"      # sentence separator token ("." and inter-sentence "and")
SILENT = "<root>"  # pseudo-word of the silent root complementizer

LEXICAL, HEAD_COMP, HEAD_SUBJ, FUNCTIONAL, COORD = (
    "lexical", "head_comp", "head_subj", "functional", "coord")


class ParseFailure(UDRSError):
    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"{message} (token {position})")


@dataclass
class DerivationNode:
    construction: str
    word: Optional[str] = None           # lexical nodes only
    head: Optional["DerivationNode"] = None
    nonhead: Optional["DerivationNode"] = None
    trailing_sep: bool = False           # sentence root absorbed a separator
    sign: object = None                  # filled during semantic interpretation
    introduced: tuple = ()               # constraint delta, for tracing

    def children(self) -> list["DerivationNode"]:
        return [c for c in (self.head, self.nonhead) if c is not None]

    def lexical_nodes(self) -> Iterator["DerivationNode"]:
        if self.construction == LEXICAL:
            yield self
        for c in self.children():
            yield from c.lexical_nodes()


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens; "." and sentence-level "and" become SEP."""
    tokens = []
    for raw in text.split():
        word = raw.lower()
        while word.endswith((".", "!", "?", ",")):
            word = word[:-1]
        if word == "and":
            tokens.append(SEP)
        elif word:
            tokens.append(word)
        if raw.rstrip().endswith("."):
            tokens.append(SEP)
    return tokens


def yield_tokens(node: DerivationNode) -> list[str]:
    """The token string a derivation covers (inverse of parse)."""
    if node.construction == LEXICAL:
        return [] if node.word == SILENT else [node.word]
    out = []
    if node.construction == COORD:
        out.extend(yield_tokens(node.head))
        out.extend(yield_tokens(node.nonhead))
    elif node.construction == HEAD_SUBJ:
        out.extend(yield_tokens(node.nonhead))  # subject precedes VP head
        out.extend(yield_tokens(node.head))
    else:
        out.extend(yield_tokens(node.head))
        if node.nonhead is not None:
            out.extend(yield_tokens(node.nonhead))
    if node.trailing_sep:
        out.append(SEP)
    return out


def _lexical_cat(lexicon: Lexicon, word: str) -> tuple:
    e = lexicon.entry(word)
    if e.pos.startswith("det-"):
        return ("det", "pl" if e.pos == "det-pl" else "sg")
    if e.pos == "noun":
        return ("n", "pl" if e.plural else "sg")
    if e.pos in ("name", "pron"):
        return ("np", "pl" if e.pos == "pron" else "sg")
    if e.pos == "verb-trans":
        return ("v", "trans")
    if e.pos == "verb-intrans":
        return ("v", "intrans")
    if e.pos == "verb-clause":
        return ("v", "clause")
    if e.pos == "comp":
        return ("comp",)
    raise ParseFailure(0, f"no syntactic category for {word!r}")


def _parse_sentence(tokens: list[str], offset: int, lexicon: Lexicon) -> list[DerivationNode]:
    """All parses of one sentence segment (CKY over the fragment grammar)."""
    n = len(tokens)
    if n == 0:
        raise ParseFailure(offset, "empty sentence")
    for i, tok in enumerate(tokens):
        if tok not in lexicon:
            raise ParseFailure(offset + i, f"unknown word {tok!r}")

    cells: dict[tuple[int, int], list[tuple[tuple, DerivationNode]]] = {}

    def add(i: int, j: int, cat: tuple, node: DerivationNode) -> None:
        cell = cells.setdefault((i, j), [])
        cell.append((cat, node))
        if cat == ("v", "intrans"):      # intransitive verb projects to VP directly
            cell.append((("vp",), node))

    for i, tok in enumerate(tokens):
        add(i, i + 1, _lexical_cat(lexicon, tok), DerivationNode(LEXICAL, word=tok))

    for width in range(2, n + 1):
        for i in range(0, n - width + 1):
            j = i + width
            for k in range(i + 1, j):
                for lcat, lnode in cells.get((i, k), []):
                    for rcat, rnode in cells.get((k, j), []):
                        made = _combine(lcat, lnode, rcat, rnode)
                        if made is not None:
                            add(i, j, *made)

    parses = [node for cat, node in cells.get((0, n), []) if cat == ("s",)]
    if not parses:
        reached = max((j for (i, j) in cells if i == 0 and cells[(i, j)]), default=0)
        raise ParseFailure(offset + reached, "no sentence parse")
    return parses


def _combine(lcat, lnode, rcat, rnode):
    if lcat[0] == "det" and rcat[0] == "n" and lcat[1] == rcat[1]:
        return ("np", lcat[1]), DerivationNode(HEAD_COMP, head=lnode, nonhead=rnode)
    if lcat == ("v", "trans") and rcat[0] == "np":
        return ("vp",), DerivationNode(HEAD_COMP, head=lnode, nonhead=rnode)
    if lcat == ("v", "clause") and rcat == ("cs",):
        return ("vp",), DerivationNode(HEAD_COMP, head=lnode, nonhead=rnode)
    if lcat == ("comp",) and rcat == ("s",):
        return ("cs",), DerivationNode(FUNCTIONAL, head=lnode, nonhead=rnode)
    if lcat[0] == "np" and rcat == ("vp",):
        return ("s",), DerivationNode(HEAD_SUBJ, head=rnode, nonhead=lnode)
    return None


def parse(tokens: list[str], lexicon: Optional[Lexicon] = None) -> list[DerivationNode]:
    """Every derivation the fragment grammar licenses for the token list.

    Each sentence is wrapped in a silent root complementizer; multiple
    sentences (separated by SEP) fold left-associatively into coordination
    nodes.  Raises ParseFailure with the position where analysis stopped.
    """
    lexicon = lexicon or _default_lexicon()
    segments: list[tuple[int, list[str], bool]] = []
    start = 0
    for i, tok in enumerate(tokens):
        if tok == SEP:
            segments.append((start, tokens[start:i], True))
            start = i + 1
    if start < len(tokens):
        segments.append((start, tokens[start:], False))
    if not segments:
        return []

    per_segment: list[list[DerivationNode]] = []
    for offset, seg, has_sep in segments:
        roots = []
        for s_node in _parse_sentence(seg, offset, lexicon):
            silent = DerivationNode(LEXICAL, word=SILENT)
            roots.append(DerivationNode(FUNCTIONAL, head=silent, nonhead=s_node,
                                        trailing_sep=has_sep))
        per_segment.append(roots)

    derivations = per_segment[0]
    for roots in per_segment[1:]:
        derivations = [DerivationNode(COORD, head=left, nonhead=right)
                       for left in derivations for right in roots]
    return derivations


_lexicon_cache: Optional[Lexicon] = None


def _default_lexicon() -> Lexicon:
    global _lexicon_cache
    if _lexicon_cache is None:
        _lexicon_cache = Lexicon.default()
    return _lexicon_cache


def bracketed(node: DerivationNode, indent: int = 0) -> str:
    """Human-readable derivation tree for --trace-syntax."""
    pad = "  " * indent
    if node.construction == LEXICAL:
        return f"{pad}({node.word})"
    parts = [f"{pad}[{node.construction}"]
    for child in _surface_order(node):
        parts.append(bracketed(child, indent + 1))
    parts.append(f"{pad}]")
    return "\n".join(parts)


def _surface_order(node: DerivationNode) -> list[DerivationNode]:
    if node.construction == HEAD_SUBJ:
        return [node.nonhead, node.head]
    return node.children()
