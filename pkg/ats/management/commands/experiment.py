from pathlib import Path

from django.core.management.base import CommandError

from ats import experiment
from ats.models import ExperimentRun

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Run the summarization experiment described by a TOML file."

    def add_arguments(self, parser):
        parser.add_argument("--config", type=Path, required=True)
        parser.add_argument(
            "--mode",
            choices=["with", "without", "both"],
            help="Override the file's include_conclusions choice.",
        )
        parser.add_argument(
            "--no-record",
            action="store_true",
            help="Do not store the run in the database.",
        )

    def run(self, *args, **options):
        cfg = experiment.load_config(options["config"])
        match options["mode"]:
            case "with":
                cfg = cfg.for_mode(True)
            case "without":
                cfg = cfg.for_mode(False)
            case "both":
                cfg = cfg.for_mode(None)

        results = experiment.run(cfg)

        errors = 0
        for result in results:
            if not options["no_record"]:
                ExperimentRun.objects.record(result, result.elapsed_seconds)

            errors += result.error_count
            self.stdout.write(
                f"{result.label}: {result.documents_evaluated} documents evaluated, "
                f"{result.error_count} errors -> {result.output_root}"
            )
            if result.best is not None:
                metric, department, f = result.best
                self.stdout.write(f"  best: {metric} F={f:.4f} ({department})")

        if errors:
            raise CommandError(f"{errors} documents failed; see the manifests")
        self.stdout.write(self.style.SUCCESS("Experiment finished"))
