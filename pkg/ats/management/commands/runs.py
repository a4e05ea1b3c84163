from pathlib import Path

from django.core.management.base import CommandError

from ats import corpus, evaluator
from ats.models import DocumentResult, ExperimentRun

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "List recorded experiment runs, newest first, or show one run."

    def add_arguments(self, parser):
        parser.add_argument(
            "run", type=int, nargs="?", help="Show this run's documents."
        )
        parser.add_argument("--limit", type=int, default=20)
        parser.add_argument("--mode", choices=["with", "without"])
        parser.add_argument("--stage", choices=[str(stage) for stage in corpus.Stage])
        status = parser.add_mutually_exclusive_group()
        status.add_argument("--failed", action="store_true")
        status.add_argument("--succeeded", action="store_true")
        parser.add_argument(
            "--report",
            action="store_true",
            help="Also print the run's eval/report.csv.",
        )

    def run(self, *args, **options):
        if options["run"] is None:
            self.list_runs(options)
        else:
            self.show_run(options)

    def describe(self, run: ExperimentRun) -> str:
        return (
            f"{run.pk:>4} {run.created_at:%Y-%m-%d %H:%M} {run.label:<20} "
            f"seed={run.seed} docs={run.document_count} "
            f"failed={run.failure_count} {run.elapsed_seconds:.1f}s "
            f"{run.manifest_sha256[:12]}"
        )

    def list_runs(self, options):
        runs = ExperimentRun.objects.with_counts()
        if options["mode"] == "with":
            runs = runs.with_conclusions()
        elif options["mode"] == "without":
            runs = runs.without_conclusions()

        runs = runs[: options["limit"]]
        if not runs:
            self.stdout.write("No experiment runs recorded.")
            return

        for run in runs:
            self.stdout.write(self.describe(run))

    def show_run(self, options):
        try:
            run = ExperimentRun.objects.with_counts().get(pk=options["run"])
        except ExperimentRun.DoesNotExist as exc:
            raise CommandError(f"No experiment run {options['run']}") from exc

        self.stdout.write(self.describe(run))

        results = DocumentResult.objects.for_run(run)
        if options["stage"]:
            results = results.for_stage(options["stage"])
        if options["failed"]:
            results = results.failed()
        elif options["succeeded"]:
            results = results.succeeded()

        for result in results:
            self.stdout.write(
                f"  {result.stage:<5} {result.department:<20} {result.doc_id:<24} "
                f"{result.error or 'ok'}"
            )

        if options["report"]:
            path = Path(run.output_root) / "eval" / "report.csv"
            self.stdout.write(evaluator.read_report(path).to_string(index=False))
