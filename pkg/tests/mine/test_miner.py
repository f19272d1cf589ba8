from unittest.mock import MagicMock

from pytest import fixture

from featurefinch.config.config_service_provider import ConfigServiceProvider
from featurefinch.config.settings import MineConfig
from featurefinch.foundation.application import Application
from featurefinch.language.features import TRUE, Atom
from featurefinch.mine.mine_service_provider import MineServiceProvider
from featurefinch.mine.miner import Miner
from featurefinch.modelx.records import DepRecord, Endpoint


def dep(product, src, dst, src_fn="main", dst_fn="main"):
    return DepRecord(
        product=product,
        kind="SL",
        src=Endpoint("unit.flc", 3, src, src_fn),
        dst=Endpoint("unit.flc", 9, dst, dst_fn),
        object="g",
    )


@fixture
def deps():
    return [
        dep("AB", Atom("A"), Atom("B")),
        dep("ABC", Atom("A"), Atom("B")),
        dep("AC", Atom("A"), Atom("A")),
        dep("AC", TRUE, TRUE),
    ]


def test_mine(deps):
    miner = Miner(MineConfig(min_support=0.5, min_confidence=0.6))

    result = miner.mine(deps)

    assert len(result.located) == 3
    assert result.derived == 2
    assert [(set(r.lhs), set(r.rhs)) for r in result.rules] == [
        ({"A_Source_{Store_Load}_Store"}, {"B_Destination_{Store_Load}_Load"}),
        ({"B_Destination_{Store_Load}_Load"}, {"A_Source_{Store_Load}_Store"}),
    ]
    assert result.relevance["SL"]["FR->FR"] == 3
    assert result.relevance["SL"]["NFR->NFR"] == 1


def test_self_dependencies_are_filtered(deps):
    miner = Miner(MineConfig(min_support=0.1, min_confidence=0.1))

    result = miner.mine(deps)

    texts = [item for r in result.rules for item in r.lhs | r.rhs]
    assert "A_Destination_{Store_Load}_Load" not in texts
    assert result.derived > len(result.rules)


def test_name_locator():
    deps = [
        dep("AB", TRUE, TRUE, "put__role__A", "get__role__B"),
        dep("AB", TRUE, TRUE, "put__role__A", "main"),
    ]
    miner = Miner(MineConfig(locator="name", min_support=0.5))

    result = miner.mine(deps)

    assert [(r.source, r.dest) for r in result.located] == [
        (Atom("A"), Atom("B"))
    ]
    assert result.relevance["SL"]["FR->NFR"] == 1


def test_nothing_to_mine():
    result = Miner().mine([dep("base", TRUE, TRUE)])

    assert result.located == []
    assert result.frequent == {}
    assert result.rules == []


def test_mine_service_provider():
    mock_app = MagicMock()
    MineServiceProvider().register(mock_app)

    mock_app.bind.assert_called_once()


def test_miner_follows_config():
    app = Application()
    ConfigServiceProvider(None, {"min_support": 0.25}).register(app)
    MineServiceProvider().register(app)

    miner = app.make("miner")

    assert isinstance(miner, Miner)
    assert miner.config.min_support == 0.25
