from fractions import Fraction

from featurefinch.support.reports import (
    fraction_text,
    read_csv_rows,
    render_csv,
)


def test_render_csv():
    text = render_csv(("name", "count"), [("a,b", 1), ("c", 2)], "# run\n")

    assert text == '# run\nname,count\n"a,b",1\nc,2\n'


def test_read_csv_rows():
    rows = read_csv_rows("# featurefinch 0.1.0\nname,count\na,1\n")

    assert rows == [{"name": "a", "count": "1"}]


def test_fraction_text():
    assert fraction_text(Fraction(1, 3)) == "0.333333"
    assert fraction_text(0.5, 2) == "0.50"
