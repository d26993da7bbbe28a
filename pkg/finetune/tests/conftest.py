from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"

TOY_MODEL = "toy:dim=32,layers=1,heads=4,vocab=1024,maxlen=64"


@pytest.fixture(scope="session")
def fixture_corpus() -> Path:
    return DATA_DIR / "fixture_corpus.jsonl"


@pytest.fixture(scope="session")
def fixture_split() -> Path:
    return DATA_DIR / "fixture_split.json"


@pytest.fixture(scope="session")
def trained_checkpoint(tmp_path_factory, fixture_corpus, fixture_split):
    """One shared 1+1-epoch training run over the 64-sentence fixture."""
    from emofinetune.data import load_examples, load_split, subset
    from emofinetune.trainer import FinetuneConfig, two_stage_finetune

    out_dir = tmp_path_factory.mktemp("ckpt")
    examples = load_examples(fixture_corpus)
    split = load_split(fixture_split)
    train = subset(examples, split, "train")
    cfg = FinetuneConfig(
        model_id=TOY_MODEL,
        stage_a_epochs=1,
        stage_b_epochs=1,
        learning_rate=1e-3,
        batch_size=8,
        seed=7,
    )
    log = two_stage_finetune(train, cfg, out_dir)
    return out_dir, log, cfg
