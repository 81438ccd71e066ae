"""Test the pipeline configuration."""

import pytest

from litmap.layout import BLUE, RED
from litmap.pipeline_config import PipelineConfig, parse_color
from litmap.pipeline_errors import ConfigError


def test_defaults():
    config = PipelineConfig()
    assert config.get_value('fraction') == 0.2
    assert config.get_value('method') == 'multilevel'
    assert config.get_value('seed') == 42
    assert config.get_value('restarts') == 3
    assert config.get_value('thresholds') == (0.15, 0.33)
    assert config.get_value('top_k') == 10
    assert config.get_value('iterations') == 200
    assert config.get_value('colors') == (RED, BLUE)
    assert config.get_value('include-ties') is False
    assert config.get_value('require-term') == []


def test_keyword_construction():
    config = PipelineConfig(fraction=0.5, seed=7, method='greedy', thresholds=(0.1, 0.2),
                            required_terms=['b', 'a', 'b'], per_cluster=True)
    assert config.get_value('fraction') == 0.5
    assert config.get_value('seed') == 7
    assert config.get_value('method') == 'greedy'
    assert config.get_value('thresholds') == (0.1, 0.2)
    assert config.get_value('require-term') == ['a', 'b']
    assert config.get_value('per-cluster') is True


@pytest.mark.parametrize('setter, args', [
    ('set_fraction', (0,)),
    ('set_fraction', (1.01,)),
    ('set_fraction', ('many',)),
    ('set_thresholds', (0.33, 0.15)),
    ('set_thresholds', (0.2, 0.2)),
    ('set_thresholds', (-0.1, 0.5)),
    ('set_thresholds', ('0.1',)),
    ('set_method', ('louvain',)),
    ('set_top_k', (0,)),
    ('set_layout_iterations', (0,)),
    ('set_restarts', (0,)),
    ('set_seed', (1.5,)),
])
def test_invalid_values(setter, args):
    with pytest.raises(ConfigError):
        getattr(PipelineConfig(), setter)(*args)


def test_thresholds_from_text():
    config = PipelineConfig()
    config.set_thresholds('0.2,0.4')
    assert config.get_value('thresholds') == (0.2, 0.4)


def test_parse_color():
    assert parse_color('#ff8000') == (255, 128, 0)
    assert parse_color('0, 0, 255') == (0, 0, 255)
    for text in ('red', '#ff80', '1,2', '0,0,256'):
        with pytest.raises(ConfigError):
            parse_color(text)


def test_colors():
    config = PipelineConfig()
    config.set_color_high('#00ff00')
    assert config.get_value('colors') == (RED, (0, 255, 0))
    config.set_color_low((1, 2, 3))
    assert config.get_value('colors') == ((1, 2, 3), (0, 255, 0))


def test_load(tmp_path):
    path = tmp_path / 'litmap.cfg'
    path.write_text('\n'.join((
        '# literature map settings',
        'fraction 0.5',
        'method greedy   # faster on small networks',
        'thresholds 0.1,0.3',
        'require-term liposomes,doxorubicin',
        'include-ties yes',
        'color-low #000000',
        'corpus a.jsonl,b.jsonl',
        '',
    )), encoding='utf-8')
    config = PipelineConfig.load(str(path))
    assert config.get_value('fraction') == 0.5
    assert config.get_value('method') == 'greedy'
    assert config.get_value('thresholds') == (0.1, 0.3)
    assert config.get_value('require-term') == ['doxorubicin', 'liposomes']
    assert config.get_value('include-ties') is True
    assert config.get_value('colors') == ((0, 0, 0), BLUE)
    assert config.get_value('corpus') == ['a.jsonl', 'b.jsonl']


def test_load_unknown_key(tmp_path):
    path = tmp_path / 'litmap.cfg'
    path.write_text('window-size 800\n', encoding='utf-8')
    with pytest.raises(ConfigError) as info:
        PipelineConfig.load(str(path))
    assert info.value.key == 'window-size'


def test_str_and_dict():
    config = PipelineConfig(seed=7)
    lines = str(config).splitlines()
    assert 'seed 7' in lines
    assert 'thresholds 0.15,0.33' in lines
    assert 'include-ties 0' in lines
    data = config.as_dict()
    assert list(data) == sorted(data)
    assert data['thresholds'] == [0.15, 0.33]
    assert data['colors'] == [[255, 0, 0], [0, 0, 255]]


def test_equality():
    assert PipelineConfig(seed=1) == PipelineConfig(seed=1)
    assert PipelineConfig(seed=1) != PipelineConfig(seed=2)
