from pathlib import Path

from ats import artifacts, normalizer, segmenter

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Print the sentences of a text file, one per line."

    def add_arguments(self, parser):
        parser.add_argument("input", type=Path)
        self.add_model_argument(parser, required=True)

    def run(self, *args, **options):
        model = self.load_model(options["model"])
        text = normalizer.normalize(
            artifacts.read_text(options["input"]), normalizer.default_config()
        )
        for span in segmenter.segment(model, text):
            self.stdout.write(" ".join(span.text.split()))
