from heaplab.file_ops.dot import heap_to_dot, structure_to_dot
from heaplab.graphs import families
from heaplab.heaps.heap import heap_from_word


def test_heap_hasse_diagram():
    e = heap_from_word(families.path(3), "1 3 2 1 3")
    assert heap_to_dot(e) == (
        'digraph "heap" {\n'
        "  rankdir=BT;\n"
        '  v0 [label="0:1"];\n'
        '  v1 [label="1:3"];\n'
        '  v2 [label="2:2"];\n'
        '  v3 [label="3:1"];\n'
        '  v4 [label="4:3"];\n'
        "  v0 -> v2;\n"
        "  v1 -> v2;\n"
        "  v2 -> v3;\n"
        "  v2 -> v4;\n"
        "}\n"
    )


def test_empty_heap():
    assert heap_to_dot(heap_from_word(families.path(2), ""), name="e") == 'digraph "e" {\n  rankdir=BT;\n}\n'


def test_concurrency_graph():
    text = structure_to_dot(families.path(2))
    assert text == 'graph "concurrency" {\n  "1";\n  "2";\n  "1" -- "2";\n}\n'
