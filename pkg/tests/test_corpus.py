import json

from monocell import plcore as pc
from monocell.corpus import build_corpus, corpus_entry, monotone_maps, write_manifest
from monocell.gen import MAX_K, MAX_N, MAX_NK


def test_corpus_is_deterministic():
    for seed in (0, 7, 58, 199):
        a, b = corpus_entry(seed), corpus_entry(seed)
        assert a.name == b.name
        assert pc.instance_to_json(a.instance) == pc.instance_to_json(b.instance)


def test_corpus_respects_the_caps(corpus):
    assert len(corpus) == 200 and [e.seed for e in corpus] == list(range(200))
    for e in corpus:
        assert 1 <= e.n <= MAX_N and e.k <= MAX_K and e.n + e.k <= MAX_NK
        assert (e.instance.n, e.instance.k) == (e.n, e.k)
    kinds = {e.kind for e in corpus}
    assert kinds == {"map", "function", "set", "negative", "random"}
    assert len(monotone_maps(corpus)) >= 80


def test_manifest(tmp_path):
    path = tmp_path / "manifest.jsonl"
    entries = build_corpus(12)
    write_manifest(entries, path)
    rows = [json.loads(line) for line in path.read_text().splitlines()]
    assert [r["name"] for r in rows] == [e.name for e in entries]
