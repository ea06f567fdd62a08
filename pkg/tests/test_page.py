import pytest

from safeindex import (
    ADULT,
    SAFE,
    MalformedUrlError,
    Page,
    extract_text,
    iter_corpus,
    page_from_html,
    parse_url,
)
from safeindex.page import PageLoadFailure, load_labeled_corpus, read_manifest, tokenize
from safeindex.errors import ConfigError

from fixture_docs import DOCS, oracle_extract


class TestTokenize:
    def test_lowercases_and_splits(self):
        assert tokenize("Hello, World!") == ("hello", "world")

    def test_keeps_internal_apostrophes_and_hyphens(self):
        assert tokenize("l'amour coming-of-age d’été") == (
            "l'amour",
            "coming-of-age",
            "d’été",
        )

    def test_strips_leading_trailing_punctuation(self):
        assert tokenize("'quoted' -dash- trail'") == ("quoted", "dash", "trail")

    def test_underscore_is_a_separator(self):
        assert tokenize("snake_case") == ("snake", "case")

    def test_digits_and_accents(self):
        assert tokenize("abc123 café 7seas") == ("abc123", "café", "7seas")

    def test_empty(self):
        assert tokenize("") == ()


class TestExtractText:
    def test_matches_oracle_on_fixture_corpus(self):
        for url, doc in DOCS:
            assert extract_text(doc) == oracle_extract(doc), url

    def test_drops_script_and_style(self):
        tokens, _ = extract_text(
            "<script>var x = 'secret';</script><style>.a{}</style><p>kept</p>"
        )
        assert tokens == ("kept",)

    def test_counts_all_img_forms(self):
        _, images = extract_text('<img src="a"><img src="b"/><IMG src="c">')
        assert images == 3

    def test_plain_text_passthrough(self):
        assert extract_text("no markup here") == (("no", "markup", "here"), 0)

    def test_malformed_markup_degrades_gracefully(self):
        tokens, images = extract_text("<p>open<p>again</div><b>bold")
        assert tokens == ("open", "again", "bold")
        assert images == 0


class TestParseUrl:
    def test_basic(self):
        parts = parse_url("http://www.Example.COM/Path?q=1#frag")
        assert parts.full_url == "http://www.example.com/path?q=1#frag"
        assert parts.registrable_domain == "example.com"
        assert parts.tld == "com"

    def test_scheme_optional(self):
        assert parse_url("example.org/x").registrable_domain == "example.org"

    def test_strips_userinfo_and_port(self):
        parts = parse_url("http://user:pw@deep.sub.example.net:8080/a")
        assert parts.registrable_domain == "example.net"
        assert parts.tld == "net"

    def test_two_level_suffix(self):
        parts = parse_url("http://shop.books.co.uk/x")
        assert parts.registrable_domain == "books.co.uk"
        assert parts.tld == "uk"

    def test_extra_suffixes(self):
        parts = parse_url("http://a.b.madeup.zz/x", frozenset({"madeup.zz"}))
        assert parts.registrable_domain == "b.madeup.zz"

    def test_single_label_host(self):
        assert parse_url("localhost/x").registrable_domain == "localhost"

    def test_xxx_tld(self):
        assert parse_url("http://site.xxx/").tld == "xxx"

    @pytest.mark.parametrize("bad", ["", "   ", "http:///path", "http://:80/x"])
    def test_malformed_raises(self, bad):
        with pytest.raises(MalformedUrlError):
            parse_url(bad)


class TestPageFromHtml:
    def test_builds_page(self):
        page = page_from_html(
            "http://a.example.com/x", "<p>one two</p><img src='i'>", ADULT
        )
        assert page.tokens == ("one", "two")
        assert page.image_count == 1
        assert page.label == ADULT


class TestCorpusIO:
    def _write(self, tmp_path, rows, bodies):
        for name, body in bodies.items():
            (tmp_path / name).write_text(body, encoding="utf-8")
        manifest = tmp_path / "manifest.csv"
        manifest.write_text(
            "path,url,label\n" + "".join(f"{r}\n" for r in rows), encoding="utf-8"
        )
        return manifest

    def test_read_manifest(self, tmp_path):
        manifest = self._write(
            tmp_path,
            [
                "a.html,http://a.com/1,adult",
                "b.html,http://b.com/1,safe",
                "c.html,http://c.com/1,unlabeled",
            ],
            {},
        )
        assert read_manifest(manifest) == [
            ("a.html", "http://a.com/1", ADULT),
            ("b.html", "http://b.com/1", SAFE),
            ("c.html", "http://c.com/1", None),
        ]

    def test_bad_label_raises(self, tmp_path):
        manifest = self._write(tmp_path, ["a.html,http://a.com/1,spam"], {})
        with pytest.raises(ConfigError, match="bad label"):
            read_manifest(manifest)

    def test_bad_header_raises(self, tmp_path):
        manifest = tmp_path / "manifest.csv"
        manifest.write_text("file,link\na,b\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="header"):
            read_manifest(manifest)

    def test_iter_corpus_yields_pages_and_failures(self, tmp_path):
        manifest = self._write(
            tmp_path,
            [
                "a.html,http://a.com/1,adult",
                "missing.html,http://b.com/1,safe",
            ],
            {"a.html": "<p>hello</p>"},
        )
        results = list(iter_corpus(manifest))
        assert isinstance(results[0], Page)
        assert results[0].tokens == ("hello",)
        assert isinstance(results[1], PageLoadFailure)
        assert results[1].path == "missing.html"

    def test_load_labeled_corpus_filters(self, tmp_path):
        manifest = self._write(
            tmp_path,
            [
                "a.html,http://a.com/1,adult",
                "b.html,http://b.com/1,unlabeled",
                "missing.html,http://c.com/1,safe",
            ],
            {"a.html": "x", "b.html": "y"},
        )
        pages = load_labeled_corpus(manifest)
        assert len(pages) == 1
        assert pages[0].label == ADULT
