import random
import tempfile
from pathlib import Path

import pandas as pd
from django.test import SimpleTestCase

from ats import corpus, errors
from ats.tests import factories


def make_document(doc_id: str, department: str = "sociology", **kwargs):
    return corpus.CorpusDocument(
        doc_id, department, kwargs.pop("body", "a b c."), "x y.", **kwargs
    )


class LoadCorpusTests(SimpleTestCase):
    def setUp(self):
        self.root = Path(self.enterContext(tempfile.TemporaryDirectory()))

    def write(self, department, doc_id, **files):
        doc_dir = self.root / department / doc_id
        doc_dir.mkdir(parents=True)
        for name, text in files.items():
            (doc_dir / name).write_text(text, encoding="utf-8")

    def test_loads_factory_corpus_in_order(self):
        factories.write_corpus(self.root)
        loaded = corpus.load_corpus(self.root)
        self.assertEqual(loaded.errors, [])
        self.assertEqual(len(loaded.documents), 12)
        self.assertEqual(
            loaded.departments,
            ["kurdish_language", "political_sciences", "sociology"],
        )
        keys = [(doc.department, doc.doc_id) for doc in loaded.documents]
        self.assertEqual(keys, sorted(keys))
        self.assertTrue(all(doc.conclusion_span for doc in loaded.documents))

    def test_factory_ids_are_unique_across_departments(self):
        factories.write_corpus(
            self.root, dict.fromkeys(factories.ALL_DEPARTMENTS, 3)
        )
        loaded = corpus.load_corpus(self.root)
        self.assertEqual(loaded.errors, [])
        self.assertEqual(len(loaded.documents), 12)
        self.assertEqual(len(loaded.departments), 4)

    def test_broken_documents_are_skipped(self):
        self.write("sociology", "ok", **{"body.txt": "a.", "abstract.txt": "b."})
        self.write("sociology", "no-body", **{"abstract.txt": "b."})
        self.write(
            "sociology", "blank-abstract", **{"body.txt": "a.", "abstract.txt": " "}
        )
        self.write(
            "sociology",
            "bad-meta",
            **{"body.txt": "a.", "abstract.txt": "b.", "conclusion.meta": "x y"},
        )
        self.write(
            "sociology",
            "out-of-range",
            **{"body.txt": "a.", "abstract.txt": "b.", "conclusion.meta": "0 99"},
        )

        with self.assertLogs("ats.corpus", "WARNING"):
            loaded = corpus.load_corpus(self.root)

        self.assertEqual([doc.doc_id for doc in loaded.documents], ["ok"])
        by_id = {error.doc_id: type(error) for error in loaded.errors}
        self.assertEqual(
            by_id,
            {
                "bad-meta": errors.MalformedMeta,
                "blank-abstract": errors.MissingAbstract,
                "no-body": errors.MissingBody,
                "out-of-range": errors.MalformedMeta,
            },
        )

    def test_duplicate_ids_across_departments(self):
        files = {"body.txt": "a.", "abstract.txt": "b."}
        self.write("kurdish_language", "same", **files)
        self.write("sociology", "same", **files)

        with self.assertLogs("ats.corpus", "WARNING"):
            loaded = corpus.load_corpus(self.root)

        self.assertEqual(len(loaded.documents), 1)
        self.assertEqual(loaded.documents[0].department, "kurdish_language")
        self.assertIsInstance(loaded.errors[0], errors.DuplicateDocument)

    def test_crlf_body_keeps_meta_offsets(self):
        head = "یەکەم.\r\nدووەم.\r\n"
        conclusion = "کۆتایی.\r\n"
        doc_dir = self.root / "sociology" / "crlf"
        doc_dir.mkdir(parents=True)
        (doc_dir / "body.txt").write_bytes((head + conclusion).encode("utf-8"))
        (doc_dir / "abstract.txt").write_text("پوختە.", encoding="utf-8")
        (doc_dir / "conclusion.meta").write_text(
            f"{len(head)} {len(head) + len(conclusion)}", encoding="utf-8"
        )

        loaded = corpus.load_corpus(self.root)

        self.assertEqual(loaded.errors, [])
        document = loaded.documents[0]
        self.assertEqual(document.body, head + conclusion)
        self.assertEqual(corpus.strip_conclusion(document).body, head)

    def test_undecodable_body(self):
        doc_dir = self.root / "sociology" / "latin1"
        doc_dir.mkdir(parents=True)
        (doc_dir / "body.txt").write_bytes(b"caf\xe9.")
        (doc_dir / "abstract.txt").write_text("پوختە.", encoding="utf-8")

        with self.assertLogs("ats.corpus", "WARNING"):
            loaded = corpus.load_corpus(self.root)

        self.assertEqual(loaded.documents, [])
        self.assertIsInstance(loaded.errors[0], errors.UnreadableFile)
        self.assertIn("body.txt is not UTF-8", str(loaded.errors[0]))

    def test_missing_root(self):
        with self.assertRaises(errors.IoFailure):
            corpus.load_corpus(self.root / "absent")


class StripConclusionTests(SimpleTestCase):
    def test_reconstruction(self):
        rng = random.Random(3)
        for n in range(100):
            body, abstract, (start, end) = factories.document(rng)
            document = corpus.CorpusDocument(
                f"d{n}", "sociology", body, abstract, (start, end)
            )
            stripped = corpus.strip_conclusion(document)
            self.assertEqual(
                stripped.body[:start] + body[start:end] + stripped.body[start:], body
            )
            self.assertNotIn(body[start:end], stripped.body)
            self.assertEqual(stripped.abstract, abstract)
            self.assertIsNone(stripped.conclusion_span)

    def test_without_span_is_unchanged(self):
        document = make_document("d")
        with self.assertLogs("ats.corpus", "WARNING"):
            documents, missing = corpus.strip_conclusions([document])
        self.assertEqual(documents, [document])
        self.assertEqual(missing, 1)

    def test_whole_body_conclusion(self):
        document = make_document("d", body="تەنها.", conclusion_span=(0, 6))
        self.assertEqual(corpus.strip_conclusion(document).body, "")


class WordStatsTests(SimpleTestCase):
    def test_overall_is_mean_of_department_means(self):
        means = {
            "political_sciences": 207.42,
            "kurdish_language": 154.26,
            "sociology": 180.09,
            "social_sciences": 184.1,
        }
        self.assertAlmostEqual(corpus.overall_mean(means), 181.4675)
        self.assertAlmostEqual(corpus.overall_mean(means), 181.46, delta=0.01)

    def test_abstract_stats(self):
        documents = [
            corpus.CorpusDocument("a", "sociology", "x.", "یەک دوو سێ"),
            corpus.CorpusDocument("b", "sociology", "x.", "یەک"),
            corpus.CorpusDocument(
                "c", "kurdish_language", "x.", "یەک  دوو\nسێ چوار"
            ),
        ]
        stats = corpus.abstract_word_stats(documents)
        self.assertEqual(stats.departments, {"kurdish_language": 4.0, "sociology": 2.0})
        self.assertEqual(stats.overall, 3.0)

    def test_body_stats_shrink_without_conclusions(self):
        with tempfile.TemporaryDirectory() as tmp:
            factories.write_corpus(Path(tmp))
            documents = corpus.load_corpus(Path(tmp)).documents

        stats = corpus.body_word_stats(documents)
        self.assertGreater(
            stats.with_conclusion.overall, stats.without_conclusion.overall
        )
        self.assertGreater(stats.difference, 0)
        for department, mean in stats.without_conclusion.departments.items():
            self.assertLess(mean, stats.with_conclusion.departments[department])

    def test_empty(self):
        self.assertEqual(corpus.overall_mean({}), 0.0)


class SplitTests(SimpleTestCase):
    def test_counts(self):
        spec = corpus.SplitSpec()
        self.assertEqual(corpus.split_counts(101, spec), (71, 15, 15))
        self.assertEqual(corpus.split_counts(66, spec), (46, 10, 10))
        self.assertEqual(corpus.split_counts(20, spec), (14, 3, 3))
        self.assertEqual(corpus.split_counts(44, spec), (30, 7, 7))
        self.assertEqual(corpus.split_counts(3, spec), (1, 1, 1))

    def test_too_few_documents(self):
        with self.assertRaises(errors.TooFewDocuments):
            corpus.split_counts(2, corpus.SplitSpec())

    def test_invalid_ratios(self):
        with self.assertRaises(ValueError):
            corpus.SplitSpec(train=0.8, val=0.15, test=0.15)
        with self.assertRaises(ValueError):
            corpus.SplitSpec(train=1.0, val=0.0, test=0.0)

    def test_ratio_label(self):
        self.assertEqual(corpus.SplitSpec().ratio_label, "70/15/15")

    def test_partition_and_determinism(self):
        documents = [make_document(f"soc-{n:03d}") for n in range(101)]
        documents += [
            make_document(f"kur-{n:03d}", "kurdish_language") for n in range(20)
        ]

        first = corpus.split_corpus(documents, corpus.SplitSpec(seed=7))
        second = corpus.split_corpus(reversed(documents), corpus.SplitSpec(seed=7))

        self.assertEqual(first, second)
        self.assertEqual(first["sociology"].counts, (71, 15, 15))
        self.assertEqual(first["kurdish_language"].counts, (14, 3, 3))

        ids = [
            doc.doc_id
            for split in first.values()
            for stage in corpus.Stage
            for doc in split.stage(stage)
        ]
        self.assertEqual(sorted(ids), sorted(doc.doc_id for doc in documents))

    def test_seed_changes_assignment(self):
        documents = [make_document(f"soc-{n:03d}") for n in range(30)]
        first = corpus.split_corpus(documents, corpus.SplitSpec(seed=1))
        second = corpus.split_corpus(documents, corpus.SplitSpec(seed=2))
        self.assertNotEqual(first["sociology"].test, second["sociology"].test)

    def test_shuffle_is_a_permutation(self):
        items = [f"d{n}" for n in range(50)]
        self.assertEqual(sorted(corpus.shuffled(items, 42)), sorted(items))
        self.assertEqual(corpus.shuffled(items, 42), corpus.shuffled(items[::-1], 42))

    def test_generator_reference_values(self):
        rng = corpus.SplitMix64(0)
        self.assertEqual(rng.next(), 0xE220A8397B1DCDAF)
        self.assertEqual(rng.next(), 0x6E789E6AA1B965F4)

    def test_fnv1a_reference_values(self):
        self.assertEqual(corpus.fnv1a_64(""), 0xCBF29CE484222325)
        self.assertEqual(corpus.fnv1a_64("a"), 0xAF63DC4C8601EC8C)

    def test_split_files(self):
        documents = [make_document(f"soc-{n:03d}") for n in range(20)]
        with tempfile.TemporaryDirectory() as tmp:
            splits = corpus.split_corpus(documents, corpus.SplitSpec(), Path(tmp))
            names = sorted(p.name for p in Path(tmp).iterdir())
            test_frame = pd.read_csv(Path(tmp) / "sociology_test.csv")
            raw = (Path(tmp) / "sociology_train.csv").read_bytes()

        self.assertEqual(
            names, ["sociology_test.csv", "sociology_train.csv", "sociology_val.csv"]
        )
        self.assertEqual(list(test_frame.columns), corpus.SPLIT_COLUMNS)
        self.assertEqual(
            list(test_frame["doc_id"]), [doc.doc_id for doc in splits["sociology"].test]
        )
        self.assertNotIn(b"\r\n", raw)
