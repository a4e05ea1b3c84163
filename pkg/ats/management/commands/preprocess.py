from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Tokenize, stem and remove stopwords, writing the four process files."

    def add_arguments(self, parser):
        self.add_document_arguments(parser, many=True)

    def run(self, *args, **options):
        for document in self.preprocess(options, options["inputs"]):
            self.stdout.write(
                self.style.SUCCESS(
                    f"{document.doc_id}: {len(document.sentences)} sentences, "
                    f"{document.counts['removed']} stopwords removed"
                )
            )
