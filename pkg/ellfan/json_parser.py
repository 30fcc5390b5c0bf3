import json
import logging
import os

from ellfan.epoints import EllipticPoint, TorusPoint
from ellfan.errors import FanError, ParseError
from ellfan.fans import Fan
from ellfan.subgroups import SubgroupScheme
from ellfan.utils import to_fraction

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def _load(file_name):
    try:
        with open(file_name) as json_data:
            return json.load(json_data)
    except (IOError, OSError) as error:
        logging.log(logging.ERROR, "Cannot read " + str(file_name) + ": " + str(error))
        raise ParseError("cannot read " + str(file_name))
    except ValueError as error:
        logging.log(logging.ERROR, "File " + str(file_name) + " is not valid JSON: " + str(error))
        raise ParseError(str(file_name) + " is not valid JSON")


def _is_integer(x):
    # JSON true and false load as bool, which is an int subclass
    return isinstance(x, int) and not isinstance(x, bool)


class FanParser(object):
    def __init__(self, file_name=None, data=None):
        self.file_name = file_name
        self.data = _load(file_name) if data is None else data
        self.fan = None
        if self.validate_json():
            self.fan = parse_fan(self.data)

    def validate_json(self):
        valid = True
        if not isinstance(self.data, dict):
            logging.log(logging.WARNING, "Fan file is not a JSON object.")
            return False

        if "name" not in self.data:
            logging.log(logging.WARNING, "No attribute name in fan file.")
            valid = False

        try:
            rank = self.data["rank"]
            if not _is_integer(rank) or rank < 0:
                logging.log(logging.WARNING, "Attribute rank must be a nonnegative integer.")
                valid = False
        except KeyError:
            logging.log(logging.WARNING, "No attribute rank in fan file.")
            valid = False

        try:
            rays = self.data["rays"]
            if len(rays) == 0:
                valid = False
                logging.log(logging.WARNING, "No rays defined.")
            for ray in rays:
                if not isinstance(ray, list) or not all(_is_integer(x) for x in ray):
                    valid = False
                    logging.log(logging.WARNING, "Ray " + repr(ray) + " is not a list of integers.")
                elif "rank" in self.data and len(ray) != self.data["rank"]:
                    valid = False
                    logging.log(logging.WARNING, "Ray " + repr(ray) + " does not have rank entries.")
        except (KeyError, TypeError):
            logging.log(logging.WARNING, "No attribute rays in fan file.")
            valid = False

        try:
            cones = self.data["max_cones"]
            if len(cones) == 0:
                valid = False
                logging.log(logging.WARNING, "No max_cones defined.")
            ray_count = len(self.data.get("rays", []))
            for cone in cones:
                for index in cone:
                    if not _is_integer(index) or not 0 <= index < ray_count:
                        valid = False
                        raise KeyError(index)
        except KeyError:
            logging.log(logging.WARNING, "Cone in max_cones refers to an undefined ray or is missing.")
            valid = False
        except TypeError:
            logging.log(logging.WARNING, "Attribute max_cones must be a list of index lists.")
            valid = False

        if not isinstance(self.data.get("assume_complete", False), bool):
            logging.log(logging.WARNING, "Attribute assume_complete must be a boolean.")
            valid = False

        return valid


class PointParser(object):
    def __init__(self, file_name=None, data=None):
        self.file_name = file_name
        self.data = _load(file_name) if data is None else data
        self.point = None
        if self.validate_json():
            self.point = parse_point(self.data)

    def validate_json(self):
        valid = True
        if not isinstance(self.data, list):
            logging.log(logging.WARNING, "Point file is not a list of coordinates.")
            return False
        for n, coord in enumerate(self.data):
            if not isinstance(coord, dict):
                logging.log(logging.WARNING, "Coordinate " + str(n) + " is not a JSON object.")
                valid = False
                continue
            unknown = set(coord) - set(["torsion", "generic"])
            if unknown:
                logging.log(logging.WARNING, "Coordinate " + str(n) + " has unknown keys " + str(sorted(unknown)))
                valid = False
            try:
                torsion = coord.get("torsion", ["0", "0"])
                if len(torsion) != 2:
                    raise ValueError("torsion needs two components")
                for x in torsion:
                    to_fraction(x)
                for symbol, c in coord.get("generic", {}).items():
                    to_fraction(c)
            except (ValueError, TypeError, ZeroDivisionError, AttributeError):
                logging.log(logging.WARNING, "Coordinate " + str(n) + " has a malformed rational.")
                valid = False
        return valid


def parse_point(data):
    coords = []
    for coord in data:
        coords.append(EllipticPoint(tuple(coord.get("torsion", ["0", "0"])), coord.get("generic", {})))
    return TorusPoint(coords)


def parse_fan(data):
    return Fan(data["rays"], data["max_cones"], rank=data.get("rank"), name=data.get("name"),
               assume_complete=data.get("assume_complete", False))


def parse_subgroup(data):
    return SubgroupScheme(data["characters"], data["ambient_rank"])


def parse_weights(text):
    try:
        rows = json.loads(text)
    except ValueError:
        logging.log(logging.ERROR, "Weights " + repr(text) + " are not a JSON array.")
        raise ParseError("weights must be a JSON array of integer arrays")
    if not isinstance(rows, list) or not all(isinstance(r, list) and all(_is_integer(x) for x in r)
                                             for r in rows):
        raise ParseError("weights must be a JSON array of integer arrays")
    return rows


def load_fan(file_name):
    parser = FanParser(file_name)
    if parser.fan is None:
        logging.log(logging.ERROR, "Fan file " + str(file_name) + " failed validation.")
        raise FanError("fan file " + str(file_name) + " is malformed")
    return parser.fan


def load_point(file_name):
    parser = PointParser(file_name)
    if parser.point is None:
        logging.log(logging.ERROR, "Point file " + str(file_name) + " failed validation.")
        raise ParseError("point file " + str(file_name) + " is malformed")
    return parser.point


def bundled_fan_names():
    return sorted(name[:-5] for name in os.listdir(os.path.join(DATA_DIR, "fans")) if name.endswith(".json"))


def bundled_fan(name):
    return load_fan(os.path.join(DATA_DIR, "fans", name + ".json"))


def bundled_point(name):
    return load_point(os.path.join(DATA_DIR, "points", name + ".json"))
