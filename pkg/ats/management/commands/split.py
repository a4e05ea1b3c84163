from pathlib import Path

from ats import corpus, errors

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Write per-department train, validation and test CSV files."

    def add_arguments(self, parser):
        parser.add_argument("--corpus", type=Path, required=True)
        parser.add_argument("--out", type=Path, required=True)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--train", type=float, default=0.70)
        parser.add_argument("--val", type=float, default=0.15)
        parser.add_argument("--test", type=float, default=0.15)

    def run(self, *args, **options):
        try:
            spec = corpus.SplitSpec(
                options["train"], options["val"], options["test"], options["seed"]
            )
        except ValueError as exc:
            raise errors.ATSError(str(exc)) from exc

        loaded = corpus.load_corpus(options["corpus"])
        splits = corpus.split_corpus(loaded.documents, spec, options["out"])
        for department, split in splits.items():
            train, val, test = split.counts
            self.stdout.write(f"{department}: {train} train, {val} val, {test} test")

        if loaded.errors:
            self.stdout.write(
                self.style.WARNING(f"{len(loaded.errors)} documents were skipped")
            )
