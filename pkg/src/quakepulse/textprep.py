"""Text normalization: symbol stripping, forward maximum matching, stopwords."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from quakepulse.errors import ConfigError

_WS_RE = re.compile(r"\s+")


def _is_pictograph(ch: str) -> bool:
    cp = ord(ch)
    if 0x1F000 <= cp <= 0x1FAFF or 0x2600 <= cp <= 0x27BF or 0x2B00 <= cp <= 0x2BFF:
        return True
    # variation selectors, ZWJ, keycap, tag characters
    if 0xFE00 <= cp <= 0xFE0F or 0xE0000 <= cp <= 0xE007F or cp in (0x200D, 0x20E3):
        return True
    return unicodedata.category(ch) in ("So", "Sk")


def _is_punct_or_symbol(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def _is_other(ch: str) -> bool:
    # controls, format chars, unassigned, private use, line/para separators
    return not ch.isspace() and unicodedata.category(ch)[0] in "CZ" and ch != " "


@dataclass(frozen=True)
class SymbolRule:
    """One removal step. Either a regex or a per-character predicate."""

    name: str
    replacement: str = " "
    pattern: re.Pattern | None = None
    char_test: Callable[[str], bool] | None = None

    def __post_init__(self):
        if self.replacement not in ("", " "):
            raise ConfigError("rule replacement must be empty or a single space")
        if (self.pattern is None) == (self.char_test is None):
            raise ConfigError("a rule needs exactly one of pattern / char_test")

    def apply(self, text: str) -> str:
        if self.pattern is not None:
            return self.pattern.sub(self.replacement, text)
        test, rep = self.char_test, self.replacement
        return "".join(rep if test(c) else c for c in text)


@dataclass(frozen=True)
class SymbolRuleSet:
    rules: tuple[SymbolRule, ...]

    def apply(self, text: str) -> str:
        for rule in self.rules:
            text = rule.apply(text)
        return _WS_RE.sub(" ", text).strip()


DEFAULT_RULES = SymbolRuleSet(
    (
        SymbolRule("url", pattern=re.compile(r"(?:https?|ftp)://\S*|www\.\S+", re.IGNORECASE)),
        # repost chains "//@name:" are caught here too, the slashes go with punctuation
        SymbolRule("mention", pattern=re.compile(r"@[\w\-]+")),
        SymbolRule("hashtag", pattern=re.compile(r"#")),
        SymbolRule("pictograph", char_test=_is_pictograph),
        SymbolRule("punctuation", char_test=_is_punct_or_symbol),
        SymbolRule("other", char_test=_is_other),
    )
)


def strip_symbols(text: str, rules: SymbolRuleSet = DEFAULT_RULES) -> str:
    return rules.apply(text)


def read_term_file(path: str | Path) -> set[str]:
    """One term per line, UTF-8; blank lines and ``#`` comments ignored."""
    terms = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            term = line.strip()
            if term and not term.startswith("#"):
                terms.add(term)
    return terms


@dataclass(frozen=True)
class PrepLexicon:
    dictionary: frozenset[str]
    stopwords: frozenset[str] = frozenset()
    # lengths present in the dictionary, longest first
    _lengths: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        d = frozenset(self.dictionary)
        if not d:
            raise ConfigError("dictionary must be non-empty")
        if "" in d:
            raise ConfigError("dictionary contains the empty string")
        object.__setattr__(self, "dictionary", d)
        object.__setattr__(self, "stopwords", frozenset(self.stopwords))
        object.__setattr__(self, "_lengths", tuple(sorted({len(t) for t in d}, reverse=True)))

    @classmethod
    def from_files(cls, dictionary: str | Path, stopwords: str | Path | None = None) -> "PrepLexicon":
        stops = read_term_file(stopwords) if stopwords else set()
        return cls(frozenset(read_term_file(dictionary)), frozenset(stops))


def _max_match_span(span: str, lex: PrepLexicon, out: list[str]) -> None:
    d, lengths = lex.dictionary, lex._lengths
    i, n = 0, len(span)
    while i < n:
        rest = n - i
        for L in lengths:
            if L <= rest and span[i : i + L] in d:
                out.append(span[i : i + L])
                i += L
                break
        else:
            out.append(span[i])
            i += 1


def tokenize_max_match(text: str, lex: PrepLexicon) -> list[str]:
    """Forward maximum matching.

    Whitespace separates spans and is never emitted. Within a span the
    longest dictionary term starting at the cursor wins; with no match the
    single character becomes a token.
    """
    out: list[str] = []
    for span in text.split():
        _max_match_span(span, lex, out)
    return out


def drop_stopwords(tokens: Iterable[str], lex: PrepLexicon) -> list[str]:
    stops = lex.stopwords
    return [t for t in tokens if t.strip() and not t.isdigit() and t not in stops]


@dataclass(frozen=True)
class Preprocessor:
    """strip -> (lowercase) -> segment -> drop stopwords, in that fixed order."""

    lexicon: PrepLexicon
    rules: SymbolRuleSet = DEFAULT_RULES
    lowercase: bool = True

    def normalize(self, text: str) -> str:
        text = strip_symbols(text, self.rules)
        return text.lower() if self.lowercase else text

    def tokens(self, text: str) -> list[str]:
        return drop_stopwords(tokenize_max_match(self.normalize(text), self.lexicon), self.lexicon)
