import json
import threading
from http.server import BaseHTTPRequestHandler, HTTPServer

import pytest
from hypothesis import given
from hypothesis import strategies as st

from banglish_demand.errors import DataError
from banglish_demand.gender import (
    Gender,
    HttpTransliterator,
    IdentityTransliterator,
    NoFirstName,
    OfflineTransliterator,
    first_name,
    load_lexicon,
    predict_gender,
    strip_honorifics,
)


@pytest.fixture(scope="module")
def lexicon():
    return load_lexicon()


@pytest.mark.parametrize(
    "name, expected",
    [
        ("Md. Sabbir Hossain", "Sabbir Hossain"),
        ("Dr Mrs Ayesha", "Ayesha"),
        ("Sabbir", "Sabbir"),
        ("MD Rahim", "Rahim"),
        ("md. Rahim", "Rahim"),
        ("Engr.   Fatema  Khatun ", "Fatema  Khatun"),
        ("Md. Dr.", ""),
        ("Mdx Rahim", "Mdx Rahim"),
    ],
)
def test_strip_honorifics(name, expected):
    assert strip_honorifics(name) == expected


def test_first_name():
    assert first_name("Sabbir Hossain") == "Sabbir"
    assert first_name("Md. Sabbir Hossain") == "Sabbir"
    assert first_name("  Nishat  ") == "Nishat"
    assert first_name("(Dr) Rahim") == "Rahim"
    with pytest.raises(NoFirstName):
        first_name("Mr. Engr.")


def test_predict_examples():
    assert predict_gender("Md Rahim Uddin", {"rahim": Gender.MALE}, IdentityTransliterator()) is Gender.MALE
    assert predict_gender("Engr. Fatema Khatun", {"fatema": Gender.FEMALE}, IdentityTransliterator()) is Gender.FEMALE
    assert predict_gender("Xyzzy Q", {}, IdentityTransliterator()) is Gender.UNKNOWN


def test_bundled_lexicon(lexicon):
    assert 500 <= len(lexicon) <= 600
    assert lexicon["sabbir"] is Gender.MALE
    assert lexicon["nishat"] is Gender.FEMALE
    assert lexicon["সাব্বির"] is Gender.MALE


def test_transliteration_fallback(lexicon):
    client = OfflineTransliterator.from_csv()
    assert "shabbir" not in lexicon
    assert predict_gender("Shabbir Ahmed", lexicon) is Gender.UNKNOWN
    assert predict_gender("Shabbir Ahmed", lexicon, client) is Gender.MALE
    assert predict_gender("Aysha Khanom", lexicon, client) is Gender.FEMALE


class Broken:
    def transliterate(self, name):
        raise TimeoutError("service down")


class Weird:
    def transliterate(self, name):
        return None


def test_client_failure_never_aborts(lexicon):
    assert predict_gender("Shabbir", lexicon, Broken()) is Gender.UNKNOWN
    assert predict_gender("Sabbir", lexicon, Broken()) is Gender.MALE
    assert predict_gender("Shabbir", lexicon, Weird()) is Gender.UNKNOWN


def test_lexicon_file_validation(tmp_path):
    path = tmp_path / "lex.csv"
    path.write_text("name,gender\nRahim,male\nFatema,FEMALE\n")
    assert load_lexicon(path) == {"rahim": Gender.MALE, "fatema": Gender.FEMALE}
    path.write_text("name,gender\nRahim,other\n")
    with pytest.raises(DataError):
        load_lexicon(path)
    path.write_text("name,gender\nAbdul Karim,male\n")
    with pytest.raises(DataError, match="single token"):
        load_lexicon(path)


class _Handler(BaseHTTPRequestHandler):
    table = {"shabbir": "সাব্বির"}

    def do_POST(self):
        body = json.loads(self.rfile.read(int(self.headers["Content-Length"])))
        reply = json.dumps({"translated": self.table.get(body["text"], body["text"])}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(reply)))
        self.end_headers()
        self.wfile.write(reply)

    def log_message(self, *args):
        pass


@pytest.fixture
def http_endpoint():
    server = HTTPServer(("127.0.0.1", 0), _Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}/translate"
    server.shutdown()


def test_http_client(http_endpoint, lexicon):
    client = HttpTransliterator(http_endpoint, timeout=5)
    assert client.transliterate("shabbir") == "সাব্বির"
    assert predict_gender("Md. Shabbir Khan", lexicon, client) is Gender.MALE


def test_http_client_unreachable(lexicon):
    client = HttpTransliterator("http://127.0.0.1:9/none", timeout=0.5)
    assert predict_gender("Shabbir", lexicon, client) is Gender.UNKNOWN


@given(st.text())
def test_predict_never_raises(name):
    assert predict_gender(name, {"rahim": Gender.MALE}, OfflineTransliterator({"x": "y"})) in Gender


@given(st.text())
def test_strip_honorifics_idempotent(name):
    once = strip_honorifics(name)
    assert strip_honorifics(once) == once


@given(st.sampled_from(["MD", "md.", "Md", "mD."]), st.sampled_from(["Rahim Uddin", "Ayesha"]))
def test_honorific_case_and_dot_insensitive(title, rest):
    assert strip_honorifics(f"{title} {rest}") == rest
