from pathlib import Path

from ats import artifacts, evaluator, normalizer

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Score a summary against its abstract with ROUGE-1, ROUGE-2 and ROUGE-L."

    def add_arguments(self, parser):
        parser.add_argument("summary", type=Path)
        parser.add_argument("abstract", type=Path)
        parser.add_argument("--out", type=Path, help="Also write the scores as CSV.")

    def run(self, *args, **options):
        cfg = normalizer.default_config()
        summary = normalizer.normalize(artifacts.read_text(options["summary"]), cfg)
        abstract = normalizer.normalize(artifacts.read_text(options["abstract"]), cfg)

        scores = evaluator.evaluate_document(summary, abstract)
        for metric, score in scores.items():
            self.stdout.write(
                f"{metric}: P={score.precision:.4f} R={score.recall:.4f} "
                f"F={score.f:.4f}"
            )

        if options["out"] is not None:
            evaluator.write_document_scores(scores, options["out"])
