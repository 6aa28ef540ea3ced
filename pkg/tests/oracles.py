"""Brute-force reference implementations used to cross-check the engine.

Everything here is recomputed from first principles on plain tuples: no
index structures, no shared splice arithmetic, separate recursions. The
dependency splice in particular goes through an explicit object graph
instead of index shifting. Carrier types from subaug.data appear only at
function boundaries.

Also holds the seeded random fixture generators for the equivalence and
scale tests (stdlib ``random``, deliberately not the engine's RNG).
"""

from __future__ import annotations

import random

from subaug.data import Internal, Leaf


# ---------------------------------------------------------------------------
# canonical representations (used to compare engine output against oracles)


def pos_repr(forms, tags):
    return tuple(forms), tuple(tags)


def dep_repr(forms, heads, deprels):
    return tuple(forms), tuple(heads), tuple(deprels)


def tree_repr(node) -> str:
    if isinstance(node, Leaf):
        return node.form
    head = node.label if node.aux is None else f"{node.label}|{node.aux}"
    return "(" + " ".join([head] + [tree_repr(c) for c in node.children]) + ")"


def text_repr(label, forms):
    return label, tuple(forms)


# ---------------------------------------------------------------------------
# pos: every span, keyed by its tag sequence


def pos_loci(tags, cap=None):
    n = len(tags)
    out = []
    for i in range(n):
        for j in range(i + 1, n + 1):
            if cap is not None and j - i > cap:
                break
            out.append(((i, j), tuple(tags[i:j])))
    return out


def splice_span(seq, span, donor_seq, donor_span):
    (i, j), (c, d) = span, donor_span
    return tuple(seq[:i]) + tuple(donor_seq[c:d]) + tuple(seq[j:])


def reachable_pos(sentences, cap=None, keys=None):
    """sentences: [(forms, tags)]; returns the set of pos_repr values one
    substitution away, donor and source pools both frozen over the input."""
    loci = [(ei, span, key)
            for ei, (_, tags) in enumerate(sentences)
            for span, key in pos_loci(tags, cap)]
    out = set()
    for ei, span, k1 in loci:
        if keys is not None and k1 not in keys:
            continue
        for vj, dspan, k2 in loci:
            if k1 != k2 or (ei, span) == (vj, dspan):
                continue
            sf, st = sentences[ei]
            df, dt = sentences[vj]
            out.add((splice_span(sf, span, df, dspan),
                     splice_span(st, span, dt, dspan)))
    return out


# ---------------------------------------------------------------------------
# dep: contiguous-yield non-root subtrees, keyed by the incoming relation


def dep_members(heads, t):
    """0-based positions of tokens whose head path passes through token t
    (1-based), including t itself."""
    out = []
    for u in range(1, len(heads) + 1):
        w = u
        while w != 0:
            if w == t:
                out.append(u - 1)
                break
            w = heads[w - 1]
    return out


def dep_loci(heads, deprels):
    out = []
    for t in range(1, len(heads) + 1):
        if heads[t - 1] == 0:
            continue
        members = dep_members(heads, t)
        if members[-1] - members[0] + 1 == len(members):
            out.append((t, (deprels[t - 1],)))
    return out


def splice_dep(src, s_tok, donor, v_tok):
    """Replace src's subtree at s_tok with donor's subtree at v_tok by
    rebuilding through an object graph; src/donor are (forms, heads,
    deprels) tuples and the result is one too."""
    sf, sh, sd = src
    df, dh, dd = donor

    def nodes_of(forms, heads, deprels):
        ns = [{"form": f, "rel": r, "parent": None} for f, r in zip(forms, deprels)]
        for i, h in enumerate(heads):
            if h != 0:
                ns[i]["parent"] = ns[h - 1]
        return ns

    smem = dep_members(sh, s_tok)
    a, b = smem[0], smem[-1] + 1
    vmem = dep_members(dh, v_tok)
    c, d = vmem[0], vmem[-1] + 1

    sn = nodes_of(sf, sh, sd)
    dn = nodes_of(df, dh, dd)
    dn[v_tok - 1]["parent"] = sn[s_tok - 1]["parent"]

    order = sn[:a] + dn[c:d] + sn[b:]
    position = {id(n): i + 1 for i, n in enumerate(order)}
    forms = tuple(n["form"] for n in order)
    heads = tuple(0 if n["parent"] is None else position[id(n["parent"])] for n in order)
    deprels = tuple(n["rel"] for n in order)
    return forms, heads, deprels


def reachable_dep(sentences, keys=None):
    """sentences: [(forms, heads, deprels)]; set of dep_repr values."""
    loci = [(ei, t, key)
            for ei, (_, heads, deprels) in enumerate(sentences)
            for t, key in dep_loci(heads, deprels)]
    out = set()
    for ei, s_tok, k1 in loci:
        if keys is not None and k1 not in keys:
            continue
        for vj, v_tok, k2 in loci:
            if k1 != k2 or (ei, s_tok) == (vj, v_tok):
                continue
            out.add(splice_dep(sentences[ei], s_tok, sentences[vj], v_tok))
    return out


# ---------------------------------------------------------------------------
# const: every internal node, keyed by label (optionally with aux)


def tree_nodes(node, path=()):
    """(path, node) for every internal node, own recursion."""
    if isinstance(node, Leaf):
        return
    yield path, node
    for i, child in enumerate(node.children):
        yield from tree_nodes(child, path + (i,))


def tree_get(node, path):
    for i in path:
        node = node.children[i]
    return node


def tree_replace(node, path, sub):
    if not path:
        return sub
    kids = list(node.children)
    kids[path[0]] = tree_replace(kids[path[0]], path[1:], sub)
    return Internal(node.label, tuple(kids), node.aux)


def const_loci(tree, use_aux=False):
    out = []
    for path, node in tree_nodes(tree):
        key = (node.label, node.aux) if use_aux else (node.label,)
        out.append((path, key))
    return out


def reachable_const(trees, use_aux=False, keys=None):
    loci = [(ei, path, key)
            for ei, tree in enumerate(trees)
            for path, key in const_loci(tree, use_aux)]
    out = set()
    for ei, p1, k1 in loci:
        if keys is not None and k1 not in keys:
            continue
        for vj, p2, k2 in loci:
            if k1 != k2 or (ei, p1) == (vj, p2):
                continue
            out.add(tree_repr(tree_replace(trees[ei], p1, tree_get(trees[vj], p2))))
    return out


# ---------------------------------------------------------------------------
# text: spans (or phrase spans), keyed by enabled constraint components


def phrase_span_info(tree):
    """{span: (label, aux)} with the outermost node owning each span,
    decided by keeping the smallest depth seen."""
    collected = []

    def walk(node, start, depth):
        if isinstance(node, Leaf):
            return start + 1
        end = start
        for child in node.children:
            end = walk(child, end, depth + 1)
        collected.append(((start, end), depth, node.label, node.aux))
        return end

    walk(tree, 0, 0)
    best = {}
    for span, depth, label, aux in collected:
        if span not in best or depth < best[span][0]:
            best[span] = (depth, label, aux)
    return {span: (label, aux) for span, (depth, label, aux) in best.items()}


def text_loci(forms, label, parse, flags=(), cap=None):
    flags = set(flags)
    n = len(forms)
    if "p" in flags:
        info = phrase_span_info(parse)
        spans = sorted(info)
    else:
        info = {}
        spans = [(i, j) for i in range(n) for j in range(i + 1, n + 1)]
    out = []
    for i, j in spans:
        if cap is not None and j - i > cap:
            continue
        key = []
        if "n" in flags:
            key.append(j - i)
        if "l" in flags:
            key.append(info[(i, j)][0])
        if "senti" in flags:
            key.append(info[(i, j)][1])
        if "t" in flags:
            key.append(label)
        out.append(((i, j), tuple(key) if key else ("*",)))
    return out


def reachable_text(examples, flags=(), cap=None, keys=None):
    """examples: [(label, forms, parse-or-None)]; set of text_repr values."""
    loci = [(ei, span, key)
            for ei, (label, forms, parse) in enumerate(examples)
            for span, key in text_loci(forms, label, parse, flags, cap)]
    out = set()
    for ei, span, k1 in loci:
        if keys is not None and k1 not in keys:
            continue
        for vj, dspan, k2 in loci:
            if k1 != k2 or (ei, span) == (vj, dspan):
                continue
            s_label, s_forms, _ = examples[ei]
            _, d_forms, _ = examples[vj]
            out.add((s_label, splice_span(s_forms, span, d_forms, dspan)))
    return out


# ---------------------------------------------------------------------------
# seeded random fixtures


WORDS = ("the", "a", "cat", "dog", "saw", "ate", "red", "big", "ran", "slept")
TAGS = ("D", "N", "V", "A")
DEPRELS = ("su", "ob", "det", "mod")
PHRASE_LABELS = ("S", "NP", "VP", "PP")
AUX_LABELS = ("pos", "neg", "neu")
CLASS_LABELS = ("yes", "no")


def random_tagged_corpus(rng: random.Random, max_examples=5, max_len=6):
    """[(forms, tags)] with a small vocabulary so keys collide often."""
    out = []
    for _ in range(rng.randint(1, max_examples)):
        n = rng.randint(1, max_len)
        out.append((tuple(rng.choice(WORDS) for _ in range(n)),
                    tuple(rng.choice(TAGS) for _ in range(n))))
    return out


def random_attachment_heads(rng: random.Random, n: int):
    """Uniform-ish random tree: attach each token (in shuffled order) to a
    token attached earlier. Valid but often non-projective."""
    heads = [0] * n
    order = list(range(1, n + 1))
    rng.shuffle(order)
    attached = [order[0]]
    for t in order[1:]:
        heads[t - 1] = rng.choice(attached)
        attached.append(t)
    return heads


def _chunks(rng: random.Random, lo: int, hi: int):
    """Random partition of [lo, hi) into contiguous pieces."""
    if lo >= hi:
        return []
    cuts = sorted(rng.sample(range(lo + 1, hi), rng.randint(0, hi - lo - 1)))
    edges = [lo] + cuts + [hi]
    return list(zip(edges, edges[1:]))


def random_projective_heads(rng: random.Random, n: int):
    """Projective tree: pick a head inside each interval, carve the rest
    into contiguous chunks, recurse with the chunk roots as children."""
    heads = [0] * n

    def build(lo, hi, parent):
        if lo >= hi:
            return
        r = rng.randrange(lo, hi)
        heads[r] = parent
        for a, b in _chunks(rng, lo, r):
            build(a, b, r + 1)
        for a, b in _chunks(rng, r + 1, hi):
            build(a, b, r + 1)

    build(0, n, 0)
    return heads


def random_dep_corpus(rng: random.Random, max_examples=5, max_len=6, projective=False):
    """[(forms, heads, deprels)]."""
    out = []
    for _ in range(rng.randint(1, max_examples)):
        n = rng.randint(1, max_len)
        forms = tuple(rng.choice(WORDS) for _ in range(n))
        heads = (random_projective_heads(rng, n) if projective
                 else random_attachment_heads(rng, n))
        deprels = tuple("root" if h == 0 else rng.choice(DEPRELS) for h in heads)
        out.append((forms, tuple(heads), deprels))
    return out


def random_tree(rng: random.Random, forms, with_aux=False, lo=0, hi=None):
    """Random phrase tree whose yield is exactly forms[lo:hi]."""
    if hi is None:
        hi = len(forms)
    aux = rng.choice(AUX_LABELS) if with_aux else None
    if hi - lo == 1:
        return Internal(rng.choice(PHRASE_LABELS), (Leaf(forms[lo]),), aux)
    pieces = []
    while len(pieces) < 2:
        pieces = _chunks(rng, lo, hi)
    kids = tuple(
        Leaf(forms[a]) if b - a == 1 and rng.random() < 0.5
        else random_tree(rng, forms, with_aux, a, b)
        for a, b in pieces
    )
    return Internal(rng.choice(PHRASE_LABELS), kids, aux)


def random_const_corpus(rng: random.Random, max_examples=5, max_len=6, with_aux=False):
    out = []
    for _ in range(rng.randint(1, max_examples)):
        n = rng.randint(1, max_len)
        forms = tuple(rng.choice(WORDS) for _ in range(n))
        out.append(random_tree(rng, forms, with_aux))
    return out


def random_text_corpus(rng: random.Random, max_examples=5, max_len=6, parsed=False,
                       with_aux=False):
    """[(label, forms, parse-or-None)]."""
    out = []
    for _ in range(rng.randint(1, max_examples)):
        n = rng.randint(1, max_len)
        forms = tuple(rng.choice(WORDS) for _ in range(n))
        parse = random_tree(rng, forms, with_aux) if parsed else None
        out.append((rng.choice(CLASS_LABELS), forms, parse))
    return out
