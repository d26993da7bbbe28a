import json
from pathlib import Path

import pytest

from emomodes.corpus import ContextTriple, Corpus, Document, Sentence

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


def make_doc(doc_id: str, texts: list[str], genre: str = "journalistic") -> Document:
    return Document(
        doc_id=doc_id,
        genre=genre,
        sentences=[Sentence(f"{doc_id}:{i}", t) for i, t in enumerate(texts)],
    )


def make_corpus(sent_counts: list[int]) -> Corpus:
    docs = [
        make_doc(f"d{i}", [f"Phrase {i} {j} ici." for j in range(n)])
        for i, n in enumerate(sent_counts)
    ]
    return Corpus(documents=docs, segments={d.doc_id: [] for d in docs})


@pytest.fixture
def hulot_triple() -> ContextTriple:
    """The worked-example sentence triple used by the prompt golden files."""
    return ContextTriple(
        previous="Nicolas Hulot n’appartient à aucun parti politique.",
        target=Sentence(
            sent_id="fx:1",
            text=(
                "Il a refusé trois fois le poste de ministre de "
                "l’Ecologie avant d’accepter la proposition "
                "d’Emmanuel Macron."
            ),
        ),
        next="Mais ça ne s’est pas très bien passé.",
    )


def load_fixture(name: str) -> dict:
    with open(DATA_DIR / "fixtures" / name, encoding="utf-8") as f:
        return json.load(f)


def write_corpus_jsonl(path, docs: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for doc in docs:
            f.write(json.dumps(doc, ensure_ascii=False) + "\n")
