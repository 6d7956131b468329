# Code for converting Parameters to and from their JSON form
from lsemStability.errors import InputFileError


def asJSON(self):
    from lsemStability.jsonLib import matrix_to_list

    return {
        "graph": self.graph.asJSON(),
        "lambda": matrix_to_list(self.lambda_),
        "omega": matrix_to_list(self.omega),
        "gram_vectors": matrix_to_list(self.gram_vectors),
    }


def fromJSON(cls, data, check=True):
    from lsemStability import MixedGraph
    from lsemStability.jsonLib import list_to_matrix

    try:
        graph = MixedGraph.fromJSON(data["graph"])
        return cls(
            graph,
            list_to_matrix(data["lambda"], "lambda"),
            list_to_matrix(data["omega"], "omega"),
            gram_vectors=list_to_matrix(data.get("gram_vectors"), "gram_vectors"),
            check=check,
        )
    except (KeyError, TypeError) as e:
        raise InputFileError("Malformed parameters JSON: %s" % e)


def save(self, path):
    from lsemStability.jsonLib import save_json

    save_json(self.asJSON(), path)


def load(cls, path, check=True):
    from lsemStability.jsonLib import load_json

    return cls.fromJSON(load_json(path), check=check)
