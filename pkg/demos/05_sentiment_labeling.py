"""Score tokens against the bundled demo lexicons and assign two-class labels.

The rule is a weighted sum with a sign threshold; an exact zero falls back to
the configured tie label (Positive by default).  The bundled lexicons are
illustrative demos, not linguistic ground truth.
"""

from tla import LanguageCode, SentimentLabel, StopwordTable, preprocess_tweet
from tla.sentiment import label_sentiment, load_bundled_lexicon, score_tokens

table = StopwordTable.load_bundled()

SAMPLES = [
    (LanguageCode.EN, "what an amazing and beautiful day"),
    (LanguageCode.EN, "worst service, terrible food, never again"),
    (LanguageCode.ES, "la peor película, muy mala"),
    (LanguageCode.RU, "я люблю этот город"),
    (LanguageCode.ZH, "这部电影很好看 我爱它"),
    (LanguageCode.EN, "completely neutral statement about trains"),
]

for lang, text in SAMPLES:
    lexicon = load_bundled_lexicon(lang)
    tokens = preprocess_tweet(text, lang, table)
    score = score_tokens(tokens, lexicon)
    label = label_sentiment(tokens, lexicon)
    print(f"{lang.value}  score={score:+.1f}  {label.value:8s}  {text}")

print()
print("the zero-score tie is configurable:")
lexicon = load_bundled_lexicon(LanguageCode.EN)
tokens = ["trains", "exist"]
for tie in (SentimentLabel.POSITIVE, SentimentLabel.NEGATIVE):
    print(f"  tie={tie.value}: {label_sentiment(tokens, lexicon, tie=tie).value}")
