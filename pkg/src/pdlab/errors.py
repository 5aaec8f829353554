class PdlabError(ValueError):
    """Base class for every rejection raised by pdlab."""


class GraphError(PdlabError):
    pass


class ParseError(PdlabError):
    def __init__(self, message, line=None, source=None):
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)
        self.line = line
        self.source = source


class PartitionError(PdlabError):
    pass


class ConstructionError(PdlabError):
    pass
