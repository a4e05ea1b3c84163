import contextlib
import io
import tempfile
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from ats import cli, segmenter
from ats.models import ExperimentRun
from ats.tests import factories

GOLDEN = Path(__file__).parent / "fixtures" / "golden"


def run(*args, **options) -> str:
    out = io.StringIO()
    call_command(*args, stdout=out, **options)
    return out.getvalue()


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = Path(self.enterContext(tempfile.TemporaryDirectory()))

    def write(self, name: str, text: str) -> Path:
        path = self.tmp / name
        path.write_text(text, encoding="utf-8")
        return path


class NormalizeCommandTests(CommandTestCase):
    def test_to_stdout(self):
        path = self.write("raw.txt", "ئەو\u064a \u0663 \u0643تێب")
        self.assertEqual(run("normalize", path).strip(), "ئەوی 3 کتێب")

    def test_to_file(self):
        path = self.write("raw.txt", "یەک\n\nدوو")
        run("normalize", path, self.tmp / "clean.txt", keep_layout=True)
        self.assertEqual(
            (self.tmp / "clean.txt").read_text(encoding="utf-8"), "یەک\n\nدوو\n"
        )

    def test_charmap_replaces_the_default_map(self):
        path = self.write("raw.txt", "\u0643\u064a")
        charmap = self.write("kaf.txt", "0643 06A9  # kaf only\n")
        run("normalize", path, self.tmp / "clean.txt", charmap=charmap)
        self.assertEqual(
            (self.tmp / "clean.txt").read_text(encoding="utf-8"), "\u06a9\u064a\n"
        )

    def test_malformed_charmap(self):
        path = self.write("raw.txt", "\u0643")
        charmap = self.write("bad.txt", "0643\n")
        with self.assertRaisesMessage(CommandError, "MalformedCharMap"):
            run("normalize", path, charmap=charmap)

    def test_missing_input(self):
        with self.assertRaises(CommandError):
            run("normalize", self.tmp / "absent.txt")


class SegmenterCommandTests(CommandTestCase):
    def test_train_then_segment(self):
        corpus_root = factories.write_corpus(self.tmp / "corpus")
        model = self.tmp / "model.segmodel.json"

        output = run("train_segmenter", corpus=corpus_root, out=model)
        self.assertIn("Trained on 12 files", output)
        self.assertIsInstance(segmenter.load_model(model), segmenter.SegmenterModel)

        sentences = ["ڕوسیا ولاتێکی بەهێزە.", "کورد نووسەرە!"]
        text = self.write("doc.txt", " ".join(sentences))
        self.assertEqual(run("segment", text, model=model).splitlines(), sentences)

    def test_abstracts_are_not_training_text(self):
        corpus_root = factories.write_corpus(self.tmp / "corpus", {"sociology": 2})
        (corpus_root / "notes.txt").write_text("یادداشت.", encoding="utf-8")
        output = run("train_segmenter", corpus=corpus_root, out=self.tmp / "m.json")
        self.assertIn("Trained on 2 files", output)

    def test_plain_text_folder(self):
        for name in ("a.txt", "nested/b.txt"):
            (self.tmp / "texts" / name).parent.mkdir(parents=True, exist_ok=True)
            (self.tmp / "texts" / name).write_text("یەک. دوو.", encoding="utf-8")
        output = run("train_segmenter", corpus=self.tmp / "texts", out=self.tmp / "m")
        self.assertIn("Trained on 2 files", output)

    def test_empty_training_corpus(self):
        (self.tmp / "empty").mkdir()
        with self.assertRaises(CommandError):
            run("train_segmenter", corpus=self.tmp / "empty", out=self.tmp / "m.json")

    def test_malformed_model(self):
        text = self.write("doc.txt", "یەک.")
        model = self.write("bad.segmodel.json", "{}")
        with self.assertRaisesMessage(CommandError, "MalformedModel"):
            run("segment", text, model=model)


class DocumentCommandTests(CommandTestCase):
    def setUp(self):
        super().setUp()
        self.body = GOLDEN / "corpus" / "political_sciences" / "pol1" / "body.txt"
        self.options = {
            "department": "political_sciences",
            "doc_id": "pol1",
            "out": self.tmp / "out",
            "stopwords": GOLDEN / "stopwords",
        }

    def test_preprocess(self):
        output = run("preprocess", self.body, **self.options)
        self.assertIn("pol1", output)
        self.assertEqual(
            (self.tmp / "out" / "Processed_pol1.txt").read_bytes(),
            (GOLDEN / "expected" / "Processed_pol1.txt").read_bytes(),
        )

    def test_preprocess_many_documents(self):
        corpus_root = factories.write_corpus(self.tmp / "corpus", {"sociology": 3})
        stopwords = factories.write_stopwords(self.tmp / "stopwords", ["sociology"])
        bodies = sorted(corpus_root.rglob("body.txt"))

        output = run(
            "preprocess",
            *bodies,
            department="sociology",
            out=self.tmp / "process",
            stopwords=stopwords,
        )

        ids = [f"sociology-{n:03d}" for n in range(3)]
        self.assertEqual([line.split(":")[0] for line in output.splitlines()], ids)
        for doc_id in ids:
            path = self.tmp / "process" / f"Processed_{doc_id}.txt"
            self.assertTrue(path.is_file(), doc_id)

    def test_doc_id_with_many_documents(self):
        other = self.write("other.txt", "یەک.")
        with self.assertRaisesMessage(CommandError, "--doc-id names a single input"):
            run("preprocess", self.body, other, **self.options)

    def test_colliding_document_ids(self):
        del self.options["doc_id"]
        (self.tmp / "a").mkdir()
        (self.tmp / "b").mkdir()
        first = self.write("a/doc.txt", "یەک.")
        second = self.write("b/doc.txt", "دوو.")
        with self.assertRaisesMessage(CommandError, "share document ids"):
            run("preprocess", first, second, **self.options)

    def test_shipped_stopwords(self):
        del self.options["stopwords"]
        self.assertIn("pol1", run("preprocess", self.body, **self.options))

    def test_summarize(self):
        run("summarize", self.body, limit=182, **self.options)
        out = self.tmp / "out"
        for name in (
            "Sorted_TF-IDF_pol1.txt",
            "pol1.full.txt",
            "pol1.final.txt",
            "pol1.state.txt",
        ):
            self.assertTrue((out / name).is_file(), name)
        self.assertIn("Word limit: 182", (out / "pol1.state.txt").read_text("utf-8"))

    def test_summarize_override_warning(self):
        output = run("summarize", self.body, limit=1, **self.options)
        self.assertIn("over the limit", output)

    def test_invalid_limit(self):
        with self.assertRaisesMessage(CommandError, "InvalidLimit"):
            run("summarize", self.body, limit=0, **self.options)

    def test_unknown_department(self):
        self.options["department"] = "social_sciences"
        with self.assertRaisesMessage(CommandError, "UnknownDepartment"):
            run("preprocess", self.body, **self.options)

    def test_lenient_department(self):
        self.options["department"] = "social_sciences"
        with self.assertLogs("ats.preprocessor", "WARNING"):
            run("preprocess", self.body, lenient=True, **self.options)


class EvaluateCommandTests(CommandTestCase):
    def test_scores(self):
        summary = self.write("summary.txt", "a b c")
        abstract = self.write("abstract.txt", "a b d")
        output = run("evaluate", summary, abstract, out=self.tmp / "scores.csv")
        self.assertIn("rouge1: P=0.6667 R=0.6667 F=0.6667", output)
        self.assertTrue((self.tmp / "scores.csv").is_file())

    def test_empty_abstract(self):
        summary = self.write("summary.txt", "a b c")
        abstract = self.write("abstract.txt", "")
        with self.assertRaisesMessage(CommandError, "MissingReference"):
            run("evaluate", summary, abstract)


class CorpusCommandTests(CommandTestCase):
    def setUp(self):
        super().setUp()
        self.corpus_root = factories.write_corpus(self.tmp / "corpus")

    def test_split(self):
        output = run("split", corpus=self.corpus_root, out=self.tmp / "splits", seed=4)
        self.assertIn("political_sciences: 3 train, 1 val, 1 test", output)
        self.assertEqual(len(list((self.tmp / "splits").glob("*.csv"))), 9)

    def test_split_bad_ratios(self):
        with self.assertRaises(CommandError):
            run("split", corpus=self.corpus_root, out=self.tmp / "s", train=0.9)

    def test_stats(self):
        output = run("stats", corpus=self.corpus_root)
        self.assertIn("Average abstract word count", output)
        self.assertIn("difference", output)


class ExperimentCommandTests(TestCase):
    def setUp(self):
        self.tmp = Path(self.enterContext(tempfile.TemporaryDirectory()))
        factories.write_corpus(self.tmp / "corpus")
        factories.write_stopwords(self.tmp / "stopwords", factories.DEFAULT_DEPARTMENTS)
        self.config = self.tmp / "experiment.toml"
        self.config.write_text(
            'corpus_root = "corpus"\n'
            'output_root = "out"\n'
            'stopword_dir = "stopwords"\n',
            encoding="utf-8",
        )

    def test_both_modes_are_recorded(self):
        output = run("experiment", config=self.config)
        self.assertIn("Experiment finished", output)
        self.assertEqual(ExperimentRun.objects.count(), 2)
        self.assertTrue((self.tmp / "out" / "comparison.csv").is_file())

        listing = run("runs")
        self.assertIn("with_conclusion", listing)
        self.assertIn("docs=12", listing)

    def test_single_mode_without_recording(self):
        run("experiment", config=self.config, mode="without", no_record=True)
        self.assertFalse(ExperimentRun.objects.exists())
        self.assertTrue((self.tmp / "out" / "without_conclusion").is_dir())
        self.assertFalse((self.tmp / "out" / "with_conclusion").exists())

    def test_failures_exit_non_zero(self):
        (self.tmp / "stopwords" / "sociology.json").unlink()
        with self.assertLogs("ats", "WARNING"):
            with self.assertRaisesMessage(CommandError, "documents failed"):
                run("experiment", config=self.config, mode="with")
        self.assertEqual(ExperimentRun.objects.count(), 1)

    def test_failed_documents_of_a_run(self):
        (self.tmp / "stopwords" / "sociology.json").unlink()
        with self.assertLogs("ats", "WARNING"), self.assertRaises(CommandError):
            run("experiment", config=self.config, mode="with")
        pk = ExperimentRun.objects.get().pk

        failed = run("runs", pk, failed=True).splitlines()[1:]
        self.assertEqual(len(failed), 3)
        self.assertTrue(all("sociology" in line for line in failed))
        self.assertTrue(all("UnknownDepartment" in line for line in failed))

        test_stage = run("runs", pk, stage="test", failed=True).splitlines()[1:]
        self.assertEqual(len(test_stage), 1)

        succeeded = run("runs", pk, succeeded=True).splitlines()[1:]
        self.assertEqual(len(succeeded), 9)
        self.assertTrue(all(line.endswith(" ok") for line in succeeded))

    def test_filter_by_mode_and_show_report(self):
        run("experiment", config=self.config)

        listing = run("runs", mode="without").splitlines()
        self.assertEqual(len(listing), 1)
        self.assertIn("without_conclusion", listing[0])

        pk = ExperimentRun.objects.with_conclusions().get().pk
        detail = run("runs", pk, report=True)
        self.assertIn("Average", detail)
        self.assertIn("rougeL", detail)

    def test_unknown_run(self):
        with self.assertRaisesMessage(CommandError, "No experiment run 99"):
            run("runs", 99)

    def test_no_runs(self):
        self.assertIn("No experiment runs recorded.", run("runs"))
        self.assertIn("No experiment runs recorded.", run("runs", mode="with"))


class ConsoleScriptTests(SimpleTestCase):
    def test_subcommand(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "raw.txt"
            path.write_text("\u0643", encoding="utf-8")
            out = io.StringIO()
            with contextlib.redirect_stdout(out):
                cli.main(["ats", "normalize", str(path)])
        self.assertEqual(out.getvalue().strip(), "\u06a9")

    def test_hyphenated_subcommand(self):
        with tempfile.TemporaryDirectory() as tmp:
            err = io.StringIO()
            with contextlib.redirect_stderr(err), self.assertRaises(SystemExit):
                cli.main(
                    ["ats", "train-segmenter", "--corpus", tmp, "--out", f"{tmp}/m"]
                )
        self.assertIn("EmptyCorpus", err.getvalue())
