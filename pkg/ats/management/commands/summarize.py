from django import conf

from ats import scorer, summarizer

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Score a document and write its full and word-limited summaries."

    def add_arguments(self, parser):
        self.add_document_arguments(parser)
        parser.add_argument(
            "--limit",
            type=int,
            default=None,
            help="Final summary word limit; defaults to ATS_WORD_LIMIT.",
        )

    def run(self, *args, **options):
        limit = options["limit"]
        if limit is None:
            limit = getattr(
                conf.settings, "ATS_WORD_LIMIT", summarizer.DEFAULT_WORD_LIMIT
            )

        [document] = self.preprocess(options, [options["input"]])
        scores = scorer.score_document(document)
        out = options["out"]
        scorer.write_scoring_artifacts(document, scores, out)

        full = summarizer.extract_full_summary(document, scores)
        final = summarizer.extract_final_summary(document, scores, limit)
        summarizer.write_summary(full, out / f"{document.doc_id}.full.txt")
        summarizer.write_summary(final, out / f"{document.doc_id}.final.txt")
        summarizer.write_summary_state(final, out / f"{document.doc_id}.state.txt")

        message = (
            f"{document.doc_id}: final summary of {final.total_sentences} sentences, "
            f"{final.total_words} words"
        )
        if final.override:
            self.stdout.write(self.style.WARNING(f"{message} (over the limit)"))
        else:
            self.stdout.write(self.style.SUCCESS(message))
