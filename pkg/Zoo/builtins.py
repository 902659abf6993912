"""
Built-in manifolds.

Every entry is written in the spec file format and parsed on first use, so
`cpc zoo export` output and the builtin load through the same code path.
The round S^3 chart is g = dx0^2 + cos^2(x0) dx1^2 + sin^2(x0) dx2^2 with
Reeb field d1 + d2; boxes keep 0.1 away from the chart's degenerate bands.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from Data_Classes.classes import ContactPairStructure, ExpectedValue, ZooEntry, manifold_of
from Data_Classes.errors import UnknownZooEntryError
from Data_Retrieval.spec_file import parse_spec_text

logger = logging.getLogger(__name__)

_S3_FIELDS = """
[form eta]
1 = cos(x0)^2
2 = sin(x0)^2

[vector xi]
1 = 1
2 = 1

[endo phi]
0 1 = -(sin(x0)*cos(x0))
0 2 = sin(x0)*cos(x0)
1 0 = sin(x0)/cos(x0)
2 0 = -(cos(x0)/sin(x0))
"""

_S3_CHART = """
[coords]
names = theta, u, v

[box]
0 = 0.1, pi/2 - 0.1
1 = 0, 2*pi
2 = 0, 2*pi

[metric]
0 0 = 1
1 1 = cos(x0)^2
2 2 = sin(x0)^2
"""

SPECS: Dict[str, str] = {
    "euclidean4": """
[manifold]
name = euclidean4
dim = 4

[box]
0 = -1, 1
1 = -1, 1
2 = -1, 1
3 = -1, 1

[metric]
0 0 = 1
1 1 = 1
2 2 = 1
3 3 = 1
""",
    "flat_torus4": """
[manifold]
name = flat_torus4
dim = 4

[coords]
names = t0, t1, t2, t3

[box]
0 = 0, 2*pi
1 = 0, 2*pi
2 = 0, 2*pi
3 = 0, 2*pi

[metric]
0 0 = 1
1 1 = 1
2 2 = 1
3 3 = 1
""",
    "sphere2": """
[manifold]
name = sphere2
dim = 2

[coords]
names = theta, varphi

[box]
0 = 0.1, pi - 0.1
1 = 0, 2*pi

[metric]
0 0 = 1
1 1 = sin(x0)^2
""",
    "sphere3": "[manifold]\nname = sphere3\ndim = 3\n" + _S3_CHART,
    "sphere4": """
[manifold]
name = sphere4
dim = 4

[coords]
names = chi, theta, varphi, psi

[box]
0 = 0.1, pi - 0.1
1 = 0.1, pi - 0.1
2 = 0.1, pi - 0.1
3 = 0, 2*pi

[metric]
0 0 = 1
1 1 = sin(x0)^2
2 2 = sin(x0)^2*sin(x1)^2
3 3 = sin(x0)^2*sin(x1)^2*sin(x2)^2
""",
    "sasakian_s3": "[manifold]\nname = sasakian_s3\ndim = 3\n" + _S3_CHART + _S3_FIELDS,
    "s3_x_s1": """
[manifold]
name = s3_x_s1
dim = 4

[coords]
names = theta, u, v, t

[box]
0 = 0.1, pi/2 - 0.1
1 = 0, 2*pi
2 = 0, 2*pi
3 = 0, 2*pi

[metric]
0 0 = 1
1 1 = cos(x0)^2
2 2 = sin(x0)^2
3 3 = 1

[form alpha1]
1 = cos(x0)^2
2 = sin(x0)^2

[form alpha2]
3 = 1

[vector Z1]
1 = 1
2 = 1

[vector Z2]
3 = 1

[endo phi]
0 1 = -(sin(x0)*cos(x0))
0 2 = sin(x0)*cos(x0)
1 0 = sin(x0)/cos(x0)
2 0 = -(cos(x0)/sin(x0))

[pair]
alpha1 = alpha1
alpha2 = alpha2
Z1 = Z1
Z2 = Z2
phi = phi
p = 1
q = 0
""",
    "s3_x_s3": """
[manifold]
name = s3_x_s3
dim = 6

[coords]
names = theta, u, v, theta2, u2, v2

[box]
0 = 0.1, pi/2 - 0.1
1 = 0, 2*pi
2 = 0, 2*pi
3 = 0.1, pi/2 - 0.1
4 = 0, 2*pi
5 = 0, 2*pi

[metric]
0 0 = 1
1 1 = cos(x0)^2
2 2 = sin(x0)^2
3 3 = 1
4 4 = cos(x3)^2
5 5 = sin(x3)^2

[form alpha1]
1 = cos(x0)^2
2 = sin(x0)^2

[form alpha2]
4 = cos(x3)^2
5 = sin(x3)^2

[vector Z1]
1 = 1
2 = 1

[vector Z2]
4 = 1
5 = 1

[endo phi]
0 1 = -(sin(x0)*cos(x0))
0 2 = sin(x0)*cos(x0)
1 0 = sin(x0)/cos(x0)
2 0 = -(cos(x0)/sin(x0))
3 4 = -(sin(x3)*cos(x3))
3 5 = sin(x3)*cos(x3)
4 3 = sin(x3)/cos(x3)
5 3 = -(cos(x3)/sin(x3))

[pair]
alpha1 = alpha1
alpha2 = alpha2
Z1 = Z1
Z2 = Z2
phi = phi
p = 1
q = 1
""",
    "flat_pair4": """
# Closed forms on a flat torus: a control entry, not a contact pair.
[manifold]
name = flat_pair4
dim = 4

[box]
0 = 0, 2*pi
1 = 0, 2*pi
2 = 0, 2*pi
3 = 0, 2*pi

[metric]
0 0 = 1
1 1 = 1
2 2 = 1
3 3 = 1

[form alpha1]
0 = 1

[form alpha2]
1 = 1

[vector Z1]
0 = 1

[vector Z2]
1 = 1

[endo phi]
2 3 = -1
3 2 = 1

[pair]
alpha1 = alpha1
alpha2 = alpha2
Z1 = Z1
Z2 = Z2
phi = phi
p = 1
q = 0
""",
}

SUMMARIES: Dict[str, str] = {
    "euclidean4": "Flat R^4 on the cube [-1, 1]^4",
    "flat_torus4": "Flat 4-torus, one period per coordinate",
    "sphere2": "Unit 2-sphere, polar chart",
    "sphere3": "Unit 3-sphere, Hopf-type chart",
    "sphere4": "Unit 4-sphere, hyperspherical chart",
    "sasakian_s3": "Unit 3-sphere with its standard Sasakian structure (phi, eta, xi)",
    "s3_x_s1": "Product of the Sasakian 3-sphere and a circle, contact pair of type (1,0)",
    "s3_x_s3": "Product of two Sasakian 3-spheres, contact pair of type (1,1)",
    "flat_pair4": "Flat torus with closed forms dx0, dx1: fails the contact pair axioms",
}

_RIC = "Ric(Z_1,Z_1)=2p , \\ Ric(Z_2,Z_2)=2q"

EXPECTED: Dict[str, Tuple[ExpectedValue, ...]] = {
    "euclidean4": (
        ExpectedValue("scal", 0.0, "TRIVIAL"),
        ExpectedValue("Riemann tensor", "flat", "TRIVIAL"),
    ),
    "flat_torus4": (
        ExpectedValue("scal", 0.0, "TRIVIAL"),
        ExpectedValue("conformal, concircular and quasi-conformal tensors", "flat", "TRIVIAL"),
        ExpectedValue("Einstein lambda", 0.0, "TRIVIAL"),
        ExpectedValue("conformal audit Einstein step residual", 1.0, "DERIVED"),
    ),
    "sphere2": (
        ExpectedValue("scal", 2.0, "DERIVED"),
        ExpectedValue("sectional curvature", 1.0, "DERIVED"),
    ),
    "sphere3": (
        ExpectedValue("scal", 6.0, "DERIVED"),
        ExpectedValue("sectional curvature", 1.0, "DERIVED"),
    ),
    "sphere4": (
        ExpectedValue("scal", 12.0, "DERIVED"),
        ExpectedValue("Einstein lambda", 3.0, "DERIVED"),
        ExpectedValue("concircular tensor", "flat", "DERIVED"),
    ),
    "sasakian_s3": (
        ExpectedValue("scal", 6.0, "DERIVED"),
        ExpectedValue("[phi, phi] + 2 d eta ⊗ xi", 0.0, "DERIVED", "Sasakian: normal contact metric"),
    ),
    "s3_x_s1": (
        ExpectedValue("Ric(Z,Z)", 2.0, "PAPER", "Ric(Z,Z)=2p+2q"),
        ExpectedValue("Ric(Z1,Z1)", 2.0, "PAPER", _RIC),
        ExpectedValue("Ric(Z2,Z2)", 0.0, "PAPER", _RIC),
        ExpectedValue("Ricci eigenvalues", "2, 2, 2, 0", "DERIVED"),
        ExpectedValue("conformal tensor", "flat", "DERIVED"),
        ExpectedValue("concircular tensor", "not flat", "DERIVED"),
        ExpectedValue("conformal audit Einstein step residual", 5.0, "DERIVED"),
        ExpectedValue("Einstein residual", 1.5, "DERIVED"),
    ),
    "s3_x_s3": (
        ExpectedValue("Ric(Z,Z)", 4.0, "PAPER", "Ric(Z,Z)=2p+2q"),
        ExpectedValue("Ric(Z1,Z1)", 2.0, "PAPER", _RIC),
        ExpectedValue("Ric(Z2,Z2)", 2.0, "PAPER", _RIC),
        ExpectedValue("scal", 12.0, "DERIVED"),
    ),
    "flat_pair4": (
        ExpectedValue("alpha1∧(dalpha1)^p∧alpha2∧(dalpha2)^q ≠ 0", "fail", "DERIVED"),
        ExpectedValue("g(X, phi Y) = (dalpha1 + dalpha2)(X,Y)", "fail", "DERIVED"),
        ExpectedValue("phi preserves TF_1 and TF_2", "fail", "DERIVED", "TG_1 has dimension 2, expected 0"),
        ExpectedValue("nabla_X Z = -phi X", "fail", "DERIVED"),
        ExpectedValue("Reeb equations, endomorphism algebra, normality", "pass", "DERIVED"),
    ),
}

BUILTIN_NAMES: Tuple[str, ...] = tuple(SPECS)


@lru_cache(maxsize=None)
def builtin(name: str) -> ZooEntry:
    """
    Load a built-in manifold.

    Args:
        name (str): One of BUILTIN_NAMES

    Returns:
        ZooEntry: Manifold, contact pair (when the entry has one) and expected values

    Raises:
        UnknownZooEntryError: If the name is not registered
    """
    if name not in SPECS:
        raise UnknownZooEntryError(name, BUILTIN_NAMES)
    target = parse_spec_text(SPECS[name], source=f"zoo:{name}")
    logger.debug(f"Built zoo entry {name}")
    return ZooEntry(
        name=name,
        manifold=manifold_of(target),
        structure=target if isinstance(target, ContactPairStructure) else None,
        expected=EXPECTED.get(name, ()),
        summary=SUMMARIES.get(name, ""),
    )


def list_entries() -> List[ZooEntry]:
    return [builtin(name) for name in BUILTIN_NAMES]
