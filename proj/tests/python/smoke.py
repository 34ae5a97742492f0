"""Smoke tests for the python bindings: one happy path per operation."""

try:
    import polyext
except ImportError:
    import _polyext as polyext


def main():
    assert polyext.counts("perm", 3) == 6
    assert polyext.counts("perm", 4) == 24
    assert polyext.counts("perm", 4, cuspidal=True) == 9
    assert polyext.counts("permB", 2, cuspidal=True) == 5

    listing = polyext.enumerate_collection("permB", 2)
    assert listing["filter"] == "loopless"
    assert len(listing["records"]) == 8
    assert listing["records"][0]["lattice_count"] == 1

    pt = {"ambient": 1, "vertices": [["0"]]}
    seg = {"ambient": 1, "vertices": [[0], [2]]}
    table = polyext.ext(pt, seg)
    assert table["totals"] == [{"p": 0, "dim": 3}]
    table = polyext.ext(seg, pt)
    assert table["ext"] == [{"m": [1], "p": 1, "dim": 1}]
    table = polyext.ext(seg, seg, equivariant=True)
    assert table["ext"] == [{"p": 0, "dim": 1}]

    report = polyext.verify("stell", 2)
    assert report["pass"] is True
    assert report["items"] == 5
    assert report["orbits"][0]["group"] == "Sn"

    dot = polyext.quiver_dot("perm", 3)
    assert dot.startswith("digraph perm3 {")
    assert dot.count("->") == 12
    quiver = polyext.quiver_json("permB", 2)
    assert len(quiver["nodes"]) == 8
    assert len(quiver["arrows"]) == 16

    square = {"ambient": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]}
    cert = polyext.certify("permB", square)
    root = cert["nodes"][cert["root"] - 1]
    assert root["stage"] == 0
    assert root["item"] == 8

    strip = {"ambient": 2, "vertices": [[0, 0], [2, 0], [0, 1], [2, 1]]}
    cert = polyext.certify("permB", strip)
    root = cert["nodes"][cert["root"] - 1]
    assert root["stage"] == 2
    assert len(root["children"]) >= 2

    assert len(polyext.schemas()) == 9

    try:
        polyext.counts("bogus", 2)
        raise AssertionError("expected InputError")
    except polyext.InputError:
        pass
    try:
        polyext.counts("perm", 6)
        raise AssertionError("expected CapError")
    except polyext.CapError:
        pass

    print("smoke ok")


if __name__ == "__main__":
    main()
