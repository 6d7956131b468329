# Code for converting a MixedGraph to and from its JSON form
from lsemStability.errors import InputFileError


def asJSON(self):
    """Canonical JSON form: directed edges sorted, bidirected pairs stored
  with ``i < j`` and sorted."""
    data = {
        "n": self.n,
        "directed": [list(e) for e in sorted(self.directed)],
        "bidirected": [list(e) for e in sorted(self.bidirected)],
    }
    if self.names:
        data["names"] = list(self.names)
    return data


def fromJSON(cls, data):
    try:
        return cls(
            data["n"],
            directed=[tuple(e) for e in data.get("directed", [])],
            bidirected=[tuple(e) for e in data.get("bidirected", [])],
            names=data.get("names"),
        )
    except (KeyError, TypeError) as e:
        raise InputFileError("Malformed graph JSON: %s" % e)


def save(self, path):
    from lsemStability.jsonLib import save_json

    save_json(self.asJSON(), path)


def load(cls, path):
    from lsemStability.jsonLib import load_json

    return cls.fromJSON(load_json(path))
