import json
import random

import numpy as np
import pytest

from semireg.perm import Permutation
from semireg.group import PermGroup
from semireg.graphs import Graph, complete_graph, cycle_graph
from semireg.engine import Certificate, verify_certificate
from semireg.formats import (
    ParseError,
    certificate_to_document,
    document_to_certificate,
    document_to_json,
    format_generators,
    parse_certificate_document,
    parse_generators,
    parse_permutation,
    read_graph6,
    read_graph_auto,
    read_sparse6,
    write_graph6,
    write_sparse6,
)


def random_graph(rng, n, p) -> Graph:
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


def test_parse_generators_s4():
    grp = parse_generators("n=4\n(1,2)\n(1,2,3,4)\n")
    assert grp.degree == 4
    assert grp.order() == 24


def test_parse_generators_comments_and_blanks():
    text = "# a group\n\nn=12\n# M11-style comment\n(1,2,3)\n"
    grp = parse_generators(text)
    assert grp.degree == 12
    assert grp.generators[0] == Permutation.from_cycles(12, [(0, 1, 2)])


def test_parse_generators_duplicate_point():
    with pytest.raises(ParseError, match="duplicate point 2"):
        parse_generators("n=3\n(1,2)(2,3)\n")


def test_parse_generators_point_out_of_range():
    with pytest.raises(ParseError, match="outside"):
        parse_generators("n=3\n(1,4)\n")


def test_parse_generators_missing_header():
    with pytest.raises(ParseError, match="header"):
        parse_generators("(1,2)\n")


def test_parse_generators_reports_line_and_column():
    try:
        parse_generators("n=4\n(1,2)\nx(1,3)\n")
        assert False
    except ParseError as exc:
        assert "line 3" in str(exc)


def test_generator_round_trip(s4):
    text = format_generators(s4)
    back = parse_generators(text)
    assert back.order() == s4.order()
    assert all(g in set(s4.generators) for g in back.generators)


def test_parse_permutation_identity():
    p = parse_permutation("()", 5)
    assert p.is_identity()


def test_graph6_round_trip_1000_random():
    rng = random.Random(6)
    for _ in range(1000):
        n = rng.randrange(1, 40)
        g = random_graph(rng, n, rng.random())
        assert read_graph6(write_graph6(g)) == g


def test_sparse6_round_trip():
    rng = random.Random(60)
    for _ in range(400):
        n = rng.randrange(1, 40)
        g = random_graph(rng, n, rng.random())
        assert read_sparse6(write_sparse6(g)) == g


def test_graph6_matches_reference_encoder():
    # byte-exact against an independent implementation
    import networkx as nx
    from networkx.readwrite.graph6 import to_graph6_bytes
    from networkx.readwrite.sparse6 import to_sparse6_bytes

    assert write_graph6(complete_graph(4)) == b"C~"
    assert write_graph6(complete_graph(4)) == to_graph6_bytes(
        nx.complete_graph(4), header=False
    ).strip()

    rng = random.Random(77)
    for _ in range(300):
        n = rng.randrange(1, 50)
        g = random_graph(rng, n, rng.random())
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(g.edges())
        assert write_graph6(g) == to_graph6_bytes(h, header=False).strip()
        assert write_sparse6(g) == to_sparse6_bytes(h, header=False).strip()


def test_graph6_headers_tolerated():
    g = cycle_graph(5)
    assert read_graph6(b">>graph6<<" + write_graph6(g)) == g
    assert read_sparse6(b">>sparse6<<" + write_sparse6(g)) == g
    assert read_graph_auto(write_sparse6(g)) == g
    assert read_graph_auto(write_graph6(g)) == g


def test_graph6_truncation_errors():
    g = complete_graph(8)
    data = write_graph6(g)
    with pytest.raises(ParseError, match="truncated"):
        read_graph6(data[:-1])
    with pytest.raises(ParseError, match="range"):
        read_graph6(bytes([30, 40]))
    with pytest.raises(ParseError):
        read_graph6(b"")


def test_parser_fuzzing_no_crashes():
    # structured errors only, no unhandled exceptions, 10^4 trials
    rng = random.Random(123)
    crashes = 0
    for _ in range(10_000):
        blob = bytes(rng.randrange(256) for _ in range(rng.randrange(0, 30)))
        for reader in (read_graph6, read_sparse6, read_graph_auto):
            try:
                reader(blob)
            except (ParseError, ValueError):
                pass
            except Exception:
                crashes += 1
        try:
            parse_generators(blob.decode("latin1"))
        except (ParseError, ValueError):
            pass
        except Exception:
            crashes += 1
    assert crashes == 0


def test_certificate_document_round_trip(d6):
    c6 = cycle_graph(6)
    rot = Permutation.from_cycles(6, [(0, 1, 2, 3, 4, 5)])
    cert = Certificate("c6", rot, 6, 6, "direct-search", ("step",))
    doc = certificate_to_document(cert, c6, d6, verified=True, seed=0)
    text = document_to_json(doc)
    parsed = parse_certificate_document(text)
    back = document_to_certificate(parsed)
    assert back.element == cert.element
    assert back.method == cert.method
    ok1, _ = verify_certificate(c6, d6, cert)
    ok2, _ = verify_certificate(c6, d6, back)
    assert ok1 == ok2 == True


def test_certificate_document_schema_rejects_junk():
    with pytest.raises(ParseError):
        parse_certificate_document("{}")
    with pytest.raises(ParseError):
        parse_certificate_document("not json")
    with pytest.raises(ParseError, match="is not one of"):
        parse_certificate_document(
            json.dumps(
                {
                    "graph_id": "x",
                    "n": 3,
                    "valency": 2,
                    "group_order": "6",
                    "method": "wishful-thinking",
                    "element": "()",
                    "element_order": 1,
                    "cycle_length": 1,
                    "trace": [],
                    "verified": False,
                    "tool_version": "0",
                    "seed": None,
                }
            )
        )


def test_exhausted_none_document(d6):
    from semireg.families import k12_m11

    k12, m11 = k12_m11()
    cert = Certificate("k12", None, 0, 0, "exhausted-none", ())
    doc = certificate_to_document(cert, k12, m11, verified=True, seed=0)
    assert doc["element"] is None
    back = document_to_certificate(parse_certificate_document(document_to_json(doc)))
    ok, reason = verify_certificate(k12, m11, back)
    assert ok, reason


def test_group_order_serialized_as_string(s4):
    doc = certificate_to_document(
        Certificate("x", Permutation.from_cycles(4, [(0, 1), (2, 3)]), 2, 2, "direct-search", ()),
        complete_graph(4),
        s4,
        verified=True,
    )
    assert doc["group_order"] == "24"
    assert isinstance(doc["group_order"], str)
