"""Walk the cleaning chain across scripts: tags, URLs, emoji, punctuation,
tokenization, stopwords, lowercasing.

Unsegmented scripts (Chinese, Japanese, Thai) tokenize per character, with
embedded Latin runs kept whole; every other language splits on whitespace.
"""

from tla import LanguageCode, StopwordTable, clean_text, preprocess_tweet, tokenize

table = StopwordTable.load_bundled()

SAMPLES = [
    (LanguageCode.EN, '<b>The BEST</b> day ever!! 😀 https://t.co/abc #blessed'),
    (LanguageCode.ES, '¡Qué día tan bueno! www.ejemplo.es/x'),
    (LanguageCode.RU, 'Я люблю кофе и тёплый хлеб...'),
    (LanguageCode.HI, 'आज का दिन बहुत अच्छा था!'),
    (LanguageCode.ZH, '今天的天气很好😀 iPhone发布会!'),
    (LanguageCode.JA, '私はAIが好きです。'),
    (LanguageCode.TH, 'วันนี้อากาศดีมาก!'),
]

for lang, raw in SAMPLES:
    cleaned = clean_text(raw)
    tokens = preprocess_tweet(raw, lang, table)
    print(f"{lang.display_name} ({lang.value})")
    print(f"  raw:     {raw}")
    print(f"  cleaned: {cleaned}")
    print(f"  tokens:  {tokens}")
    print()

print("Per-character tokenization with a Latin run held together:")
print(" ", tokenize("nova 技术 abc", LanguageCode.ZH))
