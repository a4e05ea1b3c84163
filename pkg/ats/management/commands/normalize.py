from pathlib import Path

from ats import artifacts, normalizer

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Normalize a raw text file: characters, numerals and layout."

    def add_arguments(self, parser):
        parser.add_argument("input", type=Path)
        parser.add_argument(
            "out",
            type=Path,
            nargs="?",
            help="Write here instead of standard output.",
        )
        parser.add_argument(
            "--charmap",
            type=Path,
            help="Character map file; defaults to ATS_CHARMAP.",
        )
        parser.add_argument(
            "--keep-layout",
            action="store_true",
            help="Skip joining broken lines.",
        )

    def run(self, *args, **options):
        if options["charmap"] is None:
            cfg = normalizer.default_config()
        else:
            cfg = normalizer.NormalizationConfig(
                char_map=normalizer.load_char_map(options["charmap"])
            )

        text = normalizer.normalize(
            artifacts.read_text(options["input"]),
            cfg,
            keep_layout=options["keep_layout"],
        )
        if options["out"] is None:
            self.stdout.write(text)
            return

        artifacts.write_text(options["out"], text + "\n")
        self.stdout.write(self.style.SUCCESS(f"Wrote {options['out']}"))
