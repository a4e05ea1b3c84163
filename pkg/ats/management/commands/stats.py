from pathlib import Path

from ats import corpus

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Print abstract and body word-count averages per department."

    def add_arguments(self, parser):
        parser.add_argument("--corpus", type=Path, required=True)

    def run(self, *args, **options):
        documents = corpus.load_corpus(options["corpus"]).documents
        abstracts = corpus.abstract_word_stats(documents)
        bodies = corpus.body_word_stats(documents)

        self.stdout.write("Average abstract word count")
        for department, mean in abstracts.departments.items():
            self.stdout.write(f"  {department}: {mean:.2f}")
        self.stdout.write(f"  Average: {abstracts.overall:.2f}")

        self.stdout.write("Average body word count (with / without conclusion)")
        with_conclusion = bodies.with_conclusion.departments
        without_conclusion = bodies.without_conclusion.departments
        for department, mean in with_conclusion.items():
            self.stdout.write(
                f"  {department}: {mean:.2f} / {without_conclusion[department]:.2f}"
            )
        self.stdout.write(
            f"  Average: {bodies.with_conclusion.overall:.2f} / "
            f"{bodies.without_conclusion.overall:.2f} "
            f"(difference {bodies.difference:.2f})"
        )
