"""Word normalization primitives: three stemmers and a lemmatizer."""
from frameparse.nlp.lancaster import lancaster_stem
from frameparse.nlp.lemmatizer import lemma_forms, noun_lemma, verb_lemma
from frameparse.nlp.porter import porter_stem
from frameparse.nlp.snowball import snowball_stem

__all__ = [
    "lancaster_stem",
    "lemma_forms",
    "noun_lemma",
    "porter_stem",
    "snowball_stem",
    "verb_lemma",
]
