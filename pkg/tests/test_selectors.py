import random

import pytest

from deeplinker.selectors import (
    Compound,
    Selector,
    SelectorParseError,
    parse_selector,
    select_all,
    select_first,
)
from deeplinker.xmlish import XmlNode, parse_xml


class TestParseSelector:
    def test_slide_shape_selector(self):
        sel = parse_selector("svg > g > g:nth-child(43)")
        assert len(sel.compounds) == 3
        assert sel.combinators == (">", ">")
        assert sel.compounds[2] == Compound(type_name="g", nth_child=43)

    def test_nav_menu_selector(self):
        sel = parse_selector("#w3c_nav > form:nth-child(2) > ul.main_nav > li:nth-child(2) > a")
        assert len(sel.compounds) == 5
        assert sel.combinators == (">",) * 4
        assert sel.compounds[0].id_name == "w3c_nav"
        assert sel.compounds[2].classes == ("main_nav",)

    def test_descendant_combinator(self):
        sel = parse_selector("div  p.note")
        assert sel.combinators == (" ",)

    def test_attr_forms(self):
        sel = parse_selector('a[href][rel="child"]')
        assert sel.compounds[0].attrs == (("href", None), ("rel", "child"))

    def test_universal(self):
        sel = parse_selector("a > *:nth-child(2)")
        assert sel.compounds[1].type_name is None
        assert sel.compounds[1].nth_child == 2

    @pytest.mark.parametrize(
        "bad", ["div::before", "p:hover", "", "  ", "> a", "a >", "a !b", ":nth-child(0)"]
    )
    def test_rejects(self, bad):
        with pytest.raises(SelectorParseError):
            parse_selector(bad)


class TestSelectFirst:
    def test_second_child(self):
        root = parse_xml("<a><b/><c/></a>")
        node = select_first(root, parse_selector("a > *:nth-child(2)"))
        assert node is not None and node.name == "c"

    def test_no_match(self):
        root = parse_xml("<a><b/></a>")
        assert select_first(root, parse_selector("zzz")) is None

    def test_nth_counts_elements_not_text(self):
        root = parse_xml("<r>one<x/>two<y/>three</r>")
        node = select_first(root, parse_selector("r > *:nth-child(2)"))
        assert node.name == "y"

    def test_class_tokens(self):
        root = parse_xml('<r><d class="nav main_nav wide"/></r>')
        assert select_first(root, parse_selector("d.main_nav")) is not None
        assert select_first(root, parse_selector("d.main")) is None

    def test_html_mode_case_insensitive_types(self):
        root = parse_xml("<HTML><BODY/></HTML>")
        assert select_first(root, parse_selector("html > body"), html_mode=True) is not None
        assert select_first(root, parse_selector("html > body"), html_mode=False) is None

    def test_document_order_first(self):
        root = parse_xml("<r><g><m/></g><m/></r>")
        chain = select_first(root, parse_selector("m"))
        # first match in depth-first order is the nested one
        assert chain is root.element_children()[0].element_children()[0]


# -- brute-force oracle ------------------------------------------------
# Forward set-based evaluation, independent of the engine's backward
# ancestor-chain matching.

def _annotate(root):
    """Map id(node) -> (parent, one-based element position)."""
    info = {id(root): (None, None)}
    stack = [root]
    while stack:
        node = stack.pop()
        pos = 0
        for child in node.children:
            if isinstance(child, XmlNode):
                pos += 1
                info[id(child)] = (node, pos)
                stack.append(child)
    return info


def _comp_matches(node, pos, comp, html_mode):
    if comp.type_name is not None:
        a, b = (node.name.lower(), comp.type_name.lower()) if html_mode else (node.name, comp.type_name)
        if a != b:
            return False
    if comp.id_name is not None and node.attr("id") != comp.id_name:
        return False
    for cls in comp.classes:
        if cls not in (node.attr("class") or "").split():
            return False
    for key, value in comp.attrs:
        actual = node.attr(key)
        if actual is None or (value is not None and actual != value):
            return False
    if comp.nth_child is not None and pos != comp.nth_child:
        return False
    return True


def brute_force_matches(root, sel, html_mode=False):
    info = _annotate(root)
    all_nodes = list(root.iter())

    def descendants(node):
        out = []
        for c in node.element_children():
            out.append(c)
            out.extend(descendants(c))
        return out

    current = {
        id(n): n
        for n in all_nodes
        if _comp_matches(n, info[id(n)][1], sel.compounds[0], html_mode)
    }
    for comb, comp in zip(sel.combinators, sel.compounds[1:]):
        nxt = {}
        for n in current.values():
            pool = n.element_children() if comb == ">" else descendants(n)
            for cand in pool:
                if _comp_matches(cand, info[id(cand)][1], comp, html_mode):
                    nxt[id(cand)] = cand
        current = nxt
    return [n for n in all_nodes if id(n) in current]


NAMES = ["a", "b", "c", "div", "p"]
CLASSES = ["x", "y", "main"]


def random_tree(rng, max_nodes=50):
    count = 0

    def build(depth):
        nonlocal count
        count += 1
        attrs = []
        if rng.random() < 0.3:
            attrs.append(("id", rng.choice(["n1", "n2", "n3"])))
        if rng.random() < 0.4:
            attrs.append(("class", " ".join(rng.sample(CLASSES, rng.randint(1, 2)))))
        if rng.random() < 0.2:
            attrs.append(("href", rng.choice(["/a", "/b"])))
        children = []
        if depth < 4:
            for _ in range(rng.randint(0, 4)):
                if count >= max_nodes:
                    break
                if rng.random() < 0.2:
                    children.append("text")
                else:
                    children.append(build(depth + 1))
        return XmlNode(rng.choice(NAMES), tuple(attrs), tuple(children))

    return build(0)


def random_selector(rng):
    def compound():
        kind = rng.random()
        type_name = rng.choice(NAMES + [None, None])
        id_name = rng.choice(["n1", "n2", None, None, None])
        classes = tuple(rng.sample(CLASSES, 1)) if kind < 0.3 else ()
        attrs = (("href", None),) if kind > 0.85 else ()
        nth = rng.randint(1, 4) if rng.random() < 0.35 else None
        if type_name is None and id_name is None and not classes and not attrs and nth is None:
            type_name = rng.choice(NAMES)
        return Compound(type_name, id_name, classes, attrs, nth)

    n = rng.randint(1, 3)
    return Selector(
        tuple(compound() for _ in range(n)),
        tuple(rng.choice([" ", ">"]) for _ in range(n - 1)),
    )


def test_engine_agrees_with_brute_force_oracle():
    rng = random.Random(20240817)
    selectors = [random_selector(rng) for _ in range(40)]
    for _ in range(300):
        tree = random_tree(rng)
        for sel in selectors:
            expected = brute_force_matches(tree, sel)
            assert select_all(tree, sel) == expected
            assert select_first(tree, sel) == (expected[0] if expected else None)
