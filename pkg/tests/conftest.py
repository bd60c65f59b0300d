import numpy as np
import pytest

from orlidom import young as Y
from orlidom.construct import HardyParams


def catalog_functions():
    """Representative instances of every closed-form family, plus wrapped,
    glued, tower and table-style members; used across the suite."""
    return {
        "power_1": Y.PowerYoung(1.0),
        "power_2": Y.PowerYoung(2.0),
        "power_3.5": Y.PowerYoung(3.5),
        "zygmund_2_1": Y.ZygmundYoung(2.0, 1.0),
        "zygmund_3_-1": Y.ZygmundYoung(3.0, -1.0),
        "zygmund_1_1": Y.ZygmundYoung(1.0, 1.0),
        "exp_power_0.75": Y.ExpPowerYoung(0.75),
        "exp_power_1": Y.ExpPowerYoung(1.0),
        "exp_power_1.5": Y.ExpPowerYoung(1.5),
        "exp_sqrt_log_1": Y.ExpSqrtLogYoung(1.0),
        "exp_sqrt_log_2": Y.ExpSqrtLogYoung(2.0),
        "linf": Y.LInfYoung(),
        "scaled_power": Y.scale(Y.PowerYoung(2.0), 2.0, 3.0),
        "glue_p2_p1": Y.glue(Y.PowerYoung(2.0), Y.PowerYoung(1.0)),
        "tower_2": Y.ExpTowerYoung(2, 1.0),
    }


@pytest.fixture(scope="session")
def catalog():
    return catalog_functions()


@pytest.fixture(scope="session")
def finite_catalog(catalog):
    """Finite-valued members evaluable in log space over the standard windows
    (towers overflow float range and are excluded; their content is carried by
    exact index metadata)."""
    drop = {"linf", "tower_2", "glue_p2_p1", "scaled_power"}
    return {k: v for k, v in catalog.items() if k not in drop}


@pytest.fixture(scope="session")
def params_31():
    return HardyParams.for_embedding(3, 1, 3)


@pytest.fixture(scope="session")
def grid_1e8():
    return np.geomspace(1e-8, 1e8, 16 * 64 + 1)
