import pytest
from src.RunConfig import *


data_invalid = [{"command": "plot", "viro": (2, 3)},
                {"command": "analyze"},
                {"command": "analyze", "viro": (2, 3), "polytope": "cube(2,1)"},
                {"command": "build-polytope", "triangulation": "data/fig_torus.json"},
                {"command": "analyze", "viro": (2, 0)},
                {"command": "analyze", "viro": (2, 3, 1)},
                {"command": "pages", "viro": (2, 3), "side": "left"},
                {"command": "pages", "viro": (2, 3), "method": "other"},
                {"command": "sweep", "viro": (2, 3), "random": 5, "jobs": 0},
                {"command": "sweep", "viro": (2, 3), "random": -1},
                {"command": "sweep", "viro": (2, 3)}]


@pytest.mark.parametrize('options', data_invalid)
def test_invalid_configs(options: dict):
    """ Tests the rejected option combinations"""
    print("\n Testing invalid config", options)
    with pytest.raises(ConfigError):
        RunConfig(**options)


def test_defaults():
    """ Tests the default options"""
    config = RunConfig("analyze", viro = [2, 3])
    print("\n Testing defaults..")
    assert config.viro == (2, 3)
    assert config.signs == "harnack"
    assert config.side == "both"
    assert config.method == "intersection"
    assert config.jobs == 1


def test_dict_round_trip():
    """ Tests rebuilding a configuration from its dict form"""
    config = RunConfig("sweep", polytope = "cube(2,2)", random = 4, seed = 7, jobs = 2)
    data = config.to_dict()
    print("\n Testing to_dict..")
    assert data["viro"] is None
    assert data["random"] == 4
    data["unknown"] = "ignored"
    assert RunConfig.from_dict(data) == config
    viro_config = RunConfig("pages", viro = (3, 2), side = "cohomology")
    assert viro_config.to_dict()["viro"] == [3, 2]
    assert RunConfig.from_dict(viro_config.to_dict()) == viro_config


def test_config_from_args():
    """ Tests parsing of command lines"""
    print("\n Testing argument parsing..")
    config = config_from_args(["sweep", "--viro", "3", "2", "--random", "10", "--seed", "4", "--jobs", "2",
                               "--db", "runs.db", "--verbose"])
    assert config.command == "sweep"
    assert config.viro == (3, 2)
    assert (config.random, config.seed, config.jobs) == (10, 4, 2)
    assert config.db == "runs.db"
    assert config.verbose
    config = config_from_args(["pages", "--triangulation", "data/fig_torus.json", "--signs",
                               "data/fig_torus_signs.json", "--side", "homology", "--method", "edge_sums"])
    assert config.triangulation == "data/fig_torus.json"
    assert config.method == "edge_sums"


def test_parser_errors():
    """ Tests that argparse rejects malformed command lines"""
    print("\n Testing parser errors..")
    with pytest.raises(SystemExit):
        config_from_args(["analyze"])
    with pytest.raises(SystemExit):
        config_from_args(["analyze", "--viro", "2", "3", "--polytope", "cube(2,1)"])
    with pytest.raises(SystemExit):
        config_from_args(["pages", "--viro", "2", "3", "--side", "left"])
    with pytest.raises(ConfigError):
        config_from_args(["sweep", "--viro", "2", "3"])
