import pytest

from bcnil.report import load_witnesses
from bcnil.structures import family_iii, iwasawa, torus


def catalog_structures():
    """One structure per witness row (classification and balanced tables), plus the two parallelizable ones."""
    out = [("torus", torus()), ("iwasawa", iwasawa())]
    for row in load_witnesses():
        out.append((f"{row.table}-{row.algebra}-{row.index}", row.structure()))
    out.append(("h19-minus", family_iii(0, -1)))
    return out


CATALOG_STRUCTURES = catalog_structures()


@pytest.fixture(params=CATALOG_STRUCTURES, ids=[name for name, _ in CATALOG_STRUCTURES])
def structure(request):
    return request.param[1]
