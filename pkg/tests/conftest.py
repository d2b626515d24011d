from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
SYNTHETIC_DIR = REPO_ROOT / "data" / "synthetic"


MINI_LEXICONS = {
    "adult_slang.txt": ["pedo", "culo", "tanga"],
    "animals.txt": ["perro", "gato", "vaca", "girafa"],
    "keywords.txt": ["chiste", "suegra", "colmo", "borracho"],
    "first_person.txt": ["yo", "me", "mi", "nosotros", "conmigo"],
    "second_person.txt": ["tu", "te", "ti", "vos", "usted", "contigo"],
    "first_person_suffixes.txt": ["o", "é", "amos", "emos", "imos"],
    "second_person_suffixes.txt": ["as", "es", "aste", "iste", "te"],
    "spanish_words.txt": [
        "el", "la", "sol", "sale", "dia", "casa", "perro", "gato", "vaca",
        "grande", "pequeno", "no", "si", "nada", "es", "imposible", "un",
        "chiste", "que", "hola",
    ],
    "foreign_words.txt": ["happy", "love", "weekend"],
    "dict_web_a.txt": ["jaja", "jajaja", "lol"],
    "dict_web_b.txt": [
        "el", "la", "sol", "sale", "dia", "casa", "perro", "gato", "vaca",
        "grande", "pequeno", "no", "si", "nada", "es", "imposible", "un",
        "chiste", "que", "hola", "atomo", "molecula",
    ],
}

MINI_ANTONYMS = [("grande", "pequeno"), ("dia", "noche"), ("todo", "nada")]

MINI_JOKES = [
    "un chiste del perro y la suegra",
    "el colmo del borracho es la taberna",
    "la suegra del payaso cuenta un chiste",
]

MINI_WIKI = [
    "el informe anual del gobierno nacional",
    "la economia del pais crece cada trimestre",
    "el congreso aprueba la ley del sector",
]


def write_data_root(root: Path, jokes=None, wiki=None) -> Path:
    lex = root / "lexicons"
    lex.mkdir(parents=True)
    for name, entries in MINI_LEXICONS.items():
        (lex / name).write_text("\n".join(entries) + "\n", encoding="utf-8")
    (lex / "antonyms.tsv").write_text(
        "\n".join(f"{a}\t{b}" for a, b in MINI_ANTONYMS) + "\n", encoding="utf-8"
    )
    topics = root / "topics"
    topics.mkdir()
    (topics / "jokes.txt").write_text("\n".join(jokes or MINI_JOKES) + "\n", encoding="utf-8")
    (topics / "wiki.txt").write_text("\n".join(wiki or MINI_WIKI) + "\n", encoding="utf-8")
    return root


@pytest.fixture
def mini_data_root(tmp_path):
    return write_data_root(tmp_path / "data")


@pytest.fixture(scope="session")
def session_data_root(tmp_path_factory):
    return write_data_root(tmp_path_factory.mktemp("data") / "data")
