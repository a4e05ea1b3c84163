from pathlib import Path

from ats import artifacts, corpus, errors, normalizer, segmenter

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = (
        "Train a Punkt sentence segmenter on the body.txt files of a corpus, "
        "or on every *.txt file under a plain folder."
    )

    def add_arguments(self, parser):
        parser.add_argument("--corpus", type=Path, required=True)
        parser.add_argument("--out", type=Path, required=True)
        parser.add_argument("--abbrev-threshold", type=float, default=0.3)
        parser.add_argument("--colloc-threshold", type=float, default=7.88)
        parser.add_argument("--starter-threshold", type=float, default=30.0)

    def run(self, *args, **options):
        root: Path = options["corpus"]
        if not root.is_dir():
            raise errors.IoFailure(f"{root} is not a directory")

        paths = sorted(root.rglob(corpus.BODY_FILE)) or sorted(root.rglob("*.txt"))
        cfg = normalizer.default_config()
        texts = [normalizer.normalize(artifacts.read_text(path), cfg) for path in paths]
        params = segmenter.SegmenterParams(
            abbrev_threshold=options["abbrev_threshold"],
            colloc_threshold=options["colloc_threshold"],
            starter_threshold=options["starter_threshold"],
        )

        model = segmenter.train_segmenter(texts, params)
        segmenter.save_model(model, options["out"])
        self.stdout.write(
            self.style.SUCCESS(
                f"Trained on {len(texts)} files: "
                f"{len(model.abbreviations)} abbreviations -> {options['out']}"
            )
        )
