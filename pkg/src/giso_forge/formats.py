"""graph6, DIMACS and JSON serialization for graphs and hypergraphs."""
import json

from .graphs import Graph, Hypergraph

GRAPH6_HEADER = ">>graph6<<"


def _encode_n(n):
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def _decode_n(data):
    if data[0] != "~":
        return ord(data[0]) - 63, 1
    if data[1] != "~":
        vals = [ord(c) - 63 for c in data[1:4]]
        return (vals[0] << 12) | (vals[1] << 6) | vals[2], 4
    n = 0
    for c in data[2:8]:
        n = (n << 6) | (ord(c) - 63)
    return n, 8


def to_graph6(G, header=False):
    """Encode the graph as a graph6 string (no trailing newline)."""
    if G.k != 2:
        raise ValueError("graph6 encodes ordinary graphs only")
    n = G.n
    bits = []
    E = G.edges
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in E else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for p in range(0, len(bits), 6):
        v = 0
        for b in bits[p:p + 6]:
            v = (v << 1) | b
        body.append(chr(v + 63))
    return (GRAPH6_HEADER if header else "") + _encode_n(n) + "".join(body)


def from_graph6(s):
    s = s.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise ValueError("empty graph6 string")
    n, off = _decode_n(s)
    need = n * (n - 1) // 2
    body = s[off:]
    if len(body) != (need + 5) // 6:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {(need + 5) // 6}")
    bits = []
    for c in body:
        v = ord(c) - 63
        if not 0 <= v < 64:
            raise ValueError(f"invalid graph6 character {c!r}")
        bits.extend((v >> s_) & 1 for s_ in range(5, -1, -1))
    edges = []
    p = 0
    for j in range(1, n):
        for i in range(j):
            if bits[p]:
                edges.append((i, j))
            p += 1
    return Graph(n, edges)


def to_dimacs(G, comment=None):
    lines = []
    if comment:
        lines.extend(f"c {line}" for line in comment.splitlines())
    lines.append(f"p edge {G.n} {G.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.edge_list)
    return "\n".join(lines) + "\n"


def from_dimacs(text):
    n = None
    edges = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            n, m = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise ValueError(f"unrecognized DIMACS line: {line!r}")
    if n is None:
        raise ValueError("missing 'p edge' line")
    if len(edges) != m:
        raise ValueError(f"header announces {m} edges, found {len(edges)}")
    return Graph(n, edges)


def hypergraph_to_json(H):
    return json.dumps({"n": H.n, "k": H.k, "edges": [list(e) for e in H.edge_list]})


def hypergraph_from_json(text):
    d = json.loads(text) if isinstance(text, str) else text
    return Hypergraph(d["n"], d["k"], d["edges"])
