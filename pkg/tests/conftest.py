import numpy as np
import pytest

from rulefuse.dataset import Attribute, DecisionTable, NOMINAL, NUMERIC


def make_table(names, kinds, rows, targets, row_ids=None):
    """Build a DecisionTable from Python lists (None = missing)."""
    columns = {}
    attrs = []
    for j, (name, kind) in enumerate(zip(names, kinds)):
        cells = [r[j] for r in rows]
        if kind == NUMERIC:
            col = np.array([np.nan if c is None else float(c) for c in cells],
                           dtype=np.float64)
            finite = col[~np.isnan(col)]
            domain = (float(finite.min()), float(finite.max())) if len(finite) else (None, None)
        else:
            col = np.empty(len(cells), dtype=object)
            for i, c in enumerate(cells):
                col[i] = c
            domain = tuple(sorted({c for c in cells if c is not None}))
        columns[name] = col
        attrs.append(Attribute(name, kind, domain))
    return DecisionTable(attrs, columns, targets, row_ids)


@pytest.fixture
def t1():
    """4-row table: a numeric 1..4, b nominal x/x/y/y, classes +/-."""
    return make_table(
        ["a", "b"], [NUMERIC, NOMINAL],
        [[1, "x"], [2, "x"], [3, "y"], [4, "y"]],
        ["+", "+", "-", "-"],
    )


@pytest.fixture
def t1_csv(tmp_path):
    path = tmp_path / "t1.csv"
    path.write_text("a,b,class\n1,x,+\n2,x,+\n3,y,-\n4,y,-\n")
    return str(path)
