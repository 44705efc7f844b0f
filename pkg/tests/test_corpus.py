import json

import pytest

from clinrel.corpus import (
    Corpus,
    CorpusFormatError,
    DependencyEdge,
    Document,
    EntityMention,
    RelationInstance,
    SchemaValidationError,
    Sentence,
    Token,
    document_to_record,
    dumps_corpus,
    load_corpus,
    loads_corpus,
    save_corpus,
    validate_corpus,
    validate_document,
)
from clinrel.schema import EntityType, RelationType


def make_doc(**overrides) -> Document:
    """A tiny but fully valid two-sentence document."""
    text = "A chest X-ray was normal . No pain ."
    words = text.split(" ")
    tokens = []
    pos = 0
    for w in words:
        tokens.append(Token(pos, pos + len(w), w, "NN", w.lower()))
        pos += len(w) + 1
    fields = dict(
        id="d1",
        text=text,
        tokens=tuple(tokens),
        sentences=(Sentence(0, 5), Sentence(6, 8)),
        entities=(
            EntityMention("e1", EntityType.LOCUS, 1, 1),
            EntityMention("e2", EntityType.INVESTIGATION, 2, 2),
            EntityMention("e3", EntityType.RESULT, 4, 4),
        ),
        relations=(
            RelationInstance(RelationType.HAS_TARGET, "e2", "e1"),
            RelationInstance(RelationType.HAS_FINDING, "e2", "e3"),
        ),
        deps=(DependencyEdge(2, 1, "nn"), DependencyEdge(3, 2, "nsubj")),
    )
    fields.update(overrides)
    return Document(**fields)


def test_valid_document_passes():
    validate_document(make_doc())


def test_document_helpers():
    doc = make_doc()
    assert doc.entity("e2").etype is EntityType.INVESTIGATION
    assert doc.sentence_index(0) == 0
    assert doc.sentence_index(7) == 1


@pytest.mark.parametrize(
    "overrides, fragment",
    [
        (dict(tokens=(Token(0, 0, "", "NN", ""),)), "start must be < end"),
        (dict(sentences=(Sentence(1, 8),)), "start at token 0"),
        (dict(sentences=(Sentence(0, 3), Sentence(5, 8))), "partition"),
        (dict(sentences=(Sentence(0, 4),)), "cover"),
        (
            dict(
                entities=(
                    EntityMention("e1", EntityType.LOCUS, 0, 0),
                    EntityMention("e1", EntityType.LOCUS, 1, 1),
                ),
                relations=(),
                deps=(),
            ),
            "duplicate mention id",
        ),
        (
            dict(
                entities=(EntityMention("e1", EntityType.LOCUS, 5, 99),),
                relations=(),
                deps=(),
            ),
            "out of range",
        ),
        (
            dict(relations=(RelationInstance(RelationType.HAS_TARGET, "e2", "missing"),)),
            "unknown mention id",
        ),
        (
            dict(relations=(RelationInstance(RelationType.HAS_TARGET, "e2", "e2"),)),
            "identical arguments",
        ),
        (
            # Locus cannot be the first argument of has_target
            dict(relations=(RelationInstance(RelationType.HAS_TARGET, "e1", "e2"),)),
            "illegal argument",
        ),
        (dict(deps=(DependencyEdge(3, 3, "x"),)), "head == dependent"),
        (dict(deps=(DependencyEdge(2, 99, "x"),)), "out of range"),
        (
            dict(deps=(DependencyEdge(2, 1, "a"), DependencyEdge(3, 1, "b"))),
            "more than one head",
        ),
    ],
)
def test_invalid_documents_rejected(overrides, fragment):
    with pytest.raises(SchemaValidationError, match=fragment):
        validate_document(make_doc(**overrides))


def test_null_gold_relation_rejected():
    doc = make_doc(relations=(RelationInstance(RelationType.NULL, "e2", "e1"),))
    with pytest.raises(SchemaValidationError, match="null"):
        validate_document(doc)


def test_duplicate_document_ids_rejected():
    corpus = Corpus((make_doc(), make_doc()))
    with pytest.raises(SchemaValidationError, match="duplicate document id"):
        validate_corpus(corpus)


def test_round_trip_identity():
    corpus = Corpus((make_doc(),))
    assert loads_corpus(dumps_corpus(corpus)) == corpus


def test_serialization_is_byte_stable():
    corpus = Corpus((make_doc(),))
    text = dumps_corpus(corpus)
    assert dumps_corpus(loads_corpus(text)) == text
    assert text.endswith("\n")
    assert len(text.splitlines()) == 1


def test_file_round_trip(tmp_path):
    corpus = Corpus((make_doc(),))
    path = tmp_path / "c.jsonl"
    save_corpus(corpus, path)
    assert load_corpus(path) == corpus


def test_empty_input_gives_empty_corpus():
    assert len(loads_corpus("")) == 0
    assert len(loads_corpus("\n\n")) == 0


def test_non_ascii_offsets_are_code_points():
    text = "sévère pain"
    doc = make_doc(
        text=text,
        tokens=(Token(0, 6, "sévère", "JJ", "sévère"), Token(7, 11, "pain", "NN", "pain")),
        sentences=(Sentence(0, 1),),
        entities=(EntityMention("e1", EntityType.CONDITION, 1, 1),),
        relations=(),
        deps=(),
    )
    corpus = loads_corpus(dumps_corpus(Corpus((doc,))))
    assert corpus.documents[0].tokens[0].end == 6
    assert corpus.documents[0].tokens[1].surface == "pain"


def test_unknown_document_field_rejected():
    record = document_to_record(make_doc())
    record["extra"] = 1
    line = json.dumps(record)
    with pytest.raises(CorpusFormatError, match="unknown fields"):
        loads_corpus(line)


def test_missing_document_field_rejected():
    record = document_to_record(make_doc())
    del record["deps"]
    with pytest.raises(CorpusFormatError, match="missing fields"):
        loads_corpus(json.dumps(record))


def test_unknown_nested_field_rejected():
    record = document_to_record(make_doc())
    record["tokens"][0]["color"] = "red"
    with pytest.raises(CorpusFormatError, match="unknown fields"):
        loads_corpus(json.dumps(record))


def test_unknown_entity_type_rejected():
    record = document_to_record(make_doc())
    record["entities"][0]["type"] = "Blob"
    with pytest.raises(CorpusFormatError, match="Blob"):
        loads_corpus(json.dumps(record))


def test_parse_error_carries_line_number():
    good = dumps_corpus(Corpus((make_doc(),))).rstrip("\n")
    bad = good + "\n{not json\n"
    with pytest.raises(CorpusFormatError, match="line 2"):
        loads_corpus(bad)


def test_parse_error_carries_document_id():
    record = document_to_record(make_doc(id="d9"))
    record["surprise"] = True
    with pytest.raises(CorpusFormatError, match="d9"):
        loads_corpus(json.dumps(record))


def test_subset_is_prefix():
    c1 = make_doc(id="a")
    c2 = make_doc(id="b")
    corpus = Corpus((c1, c2))
    assert corpus.subset(1).documents == (c1,)
    assert len(corpus.subset(5)) == 2
