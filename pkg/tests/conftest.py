import pytest

from galbench.corpus import corpus_names, load_corpus


@pytest.fixture(scope="session")
def ex_rs():
    return load_corpus("EX_RS")


@pytest.fixture(scope="session")
def rigid3():
    return load_corpus("RIGID3")


@pytest.fixture(scope="session")
def c5():
    return load_corpus("C5")


@pytest.fixture(scope="session")
def gf4():
    return load_corpus("GF4")


@pytest.fixture(scope="session")
def gf16():
    return load_corpus("GF16")


@pytest.fixture(scope="session", params=corpus_names())
def corpus_structure(request):
    return load_corpus(request.param)
