"""Language-aware text normalization shared by the lexicon, the indexer and
the query pipeline.

One normalizer feeds all three sides, so a surface form written into an
ontology lemma, a variant, a service title or a user query always meets the
same canonical shape before comparison:

  * tokens are maximal runs of letters/digits/hyphens, with hyphens then
    split into sub-tokens ("duty-free" and "duty free" tokenize identically)
  * NFKC + case fold everywhere
  * French additionally sheds combining diacritics
  * Arabic sheds tatweel and harakat, folds alef variants to bare alef and
    final alef maqsura to ya (ta marbuta is intentionally left alone)
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import EmptyQuery

SHIPPED_LANGUAGES = ("fr", "ar", "en")

_ARABIC_RANGES = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0x08A0, 0x08FF),
    (0xFB50, 0xFDFF),
    (0xFE70, 0xFEFF),
)

_AR_TATWEEL = "ـ"
# Tanwin, short vowels, shadda, sukun and friends (064B-065F) plus dagger alef.
_AR_HARAKAT = frozenset(chr(c) for c in range(0x064B, 0x0660)) | {"ٰ"}
_AR_FOLD = {
    "آ": "ا",  # alef madda
    "أ": "ا",  # alef hamza above
    "إ": "ا",  # alef hamza below
    "ى": "ي",  # alef maqsura -> ya
}


def is_valid_language(code: str) -> bool:
    """Two lowercase ASCII letters; anything else is rejected at the boundary."""
    return len(code) == 2 and all("a" <= c <= "z" for c in code)


def _strip_combining(text: str) -> str:
    decomposed = unicodedata.normalize("NFD", text)
    kept = "".join(c for c in decomposed if not unicodedata.combining(c))
    return unicodedata.normalize("NFC", kept)


def _normalize_arabic(text: str) -> str:
    out = []
    for ch in text:
        if ch == _AR_TATWEEL or ch in _AR_HARAKAT:
            continue
        out.append(_AR_FOLD.get(ch, ch))
    return "".join(out)


def normalize_token(token: str, language: str) -> str:
    """Normalize a single token. May return "" (e.g. a run of harakat)."""
    t = unicodedata.normalize("NFKC", token).casefold()
    if language == "fr":
        t = _strip_combining(t)
    elif language == "ar":
        t = _normalize_arabic(t)
    return t


def _is_token_char(ch: str) -> bool:
    return ch.isalnum() or unicodedata.category(ch).startswith("M")


def tokenize(text: str, language: str) -> list[str]:
    """Split text into normalized tokens.

    Splits on everything that is not a letter, digit or hyphen, then splits
    the hyphens themselves: only the hyphen-split sub-tokens are kept.
    """
    tokens: list[str] = []
    run: list[str] = []

    def flush() -> None:
        if not run:
            return
        for piece in "".join(run).split("-"):
            if not piece:
                continue
            norm = normalize_token(piece, language)
            if not norm:
                continue
            if all(_is_token_char(ch) for ch in norm):
                tokens.append(norm)
            else:
                # NFKC can mint separators ('¼' -> '1⁄4'); re-split so the
                # output is a fixpoint of tokenization.
                tokens.extend(tokenize(norm, language))
        run.clear()

    for ch in text:
        # Combining marks (harakat, stray accents) ride along with their
        # base letter; normalization deals with them afterwards.
        if ch.isalnum() or ch == "-" or unicodedata.category(ch).startswith("M"):
            run.append(ch)
        else:
            flush()
    flush()
    return tokens


def normalize_form(text: str, language: str) -> str:
    """Canonical single-string form of a (possibly multi-word) surface text."""
    return " ".join(tokenize(text, language))


def _is_arabic_letter(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _ARABIC_RANGES)


def detect_language(text: str, default: str = "fr") -> str:
    """Arabic when at least half of the letters are Arabic-script, else the default."""
    stripped = text.strip()
    if not stripped:
        raise EmptyQuery("query text is empty")
    letters = [c for c in stripped if c.isalpha()]
    if letters:
        arabic = sum(1 for c in letters if _is_arabic_letter(c))
        if 2 * arabic >= len(letters):
            return "ar"
    return default


@dataclass(frozen=True)
class StopwordTable:
    """Per-language stopword sets, already normalized with the shared rules."""

    words: dict[str, frozenset[str]] = field(default_factory=dict)

    def for_language(self, language: str) -> frozenset[str]:
        return self.words.get(language, frozenset())

    def is_stopword(self, token: str, language: str) -> bool:
        return token in self.words.get(language, frozenset())


def _parse_stopword_lines(text: str, language: str) -> frozenset[str]:
    entries = set()
    for line in text.splitlines():
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        norm = normalize_form(word, language)
        if norm:
            entries.add(norm)
    return frozenset(entries)


def load_stopwords(overrides: dict[str, Path] | None = None) -> StopwordTable:
    """Bundled lists for fr/ar/en; an override file replaces a bundled list.

    Override files are UTF-8, one token per line, '#' comments allowed.
    """
    words: dict[str, frozenset[str]] = {}
    for lang in SHIPPED_LANGUAGES:
        text = resources.files("egovsearch.data").joinpath(f"stopwords_{lang}.txt").read_text("utf-8")
        words[lang] = _parse_stopword_lines(text, lang)
    for lang, path in (overrides or {}).items():
        words[lang] = _parse_stopword_lines(Path(path).read_text("utf-8"), lang)
    return StopwordTable(words)


DEFAULT_STOPWORDS = load_stopwords()
