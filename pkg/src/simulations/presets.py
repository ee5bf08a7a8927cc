"""
Builtin scenarios.

Rate constants are kept as strings, the way a scenario file would spell them.
No preset sets [init]; all of them start from the default seed
(pi/mu - 0.01, 0, 0.01, 0).
"""

FIG3_PARAMS = {
    'pi': '10',
    'beta': '0.007',
    'mu': '0.5',
    'eps': '0.06',
    'delta': '0.05',
    'p': '0.09767',
    'lam': '0.0084231',
    'rho': '0.21431',
    'l': '0.005234',
    'b': '0.00539',
}

FIG12_PARAMS = {**FIG3_PARAMS, 'pi': '50', 'beta': '0.07'}

PRESETS = {
    'fig3': {
        'scenario': {'label': 'fig3'},
        'params': FIG3_PARAMS,
    },
    'fig12': {
        'scenario': {'label': 'fig12'},
        'params': FIG12_PARAMS,
    },
    'case-u': {
        'scenario': {'label': 'case-u'},
        'params': FIG12_PARAMS,
        'grid': {'tf': '25'},
        'control': {'pi1': '1', 'pi2': '0', 'pi3': '0'},
    },
    'case-v': {
        'scenario': {'label': 'case-v'},
        'params': FIG12_PARAMS,
        'grid': {'tf': '25'},
        'control': {'pi1': '0', 'pi2': '1', 'pi3': '0'},
    },
    'case-w': {
        'scenario': {'label': 'case-w'},
        'params': FIG12_PARAMS,
        'grid': {'tf': '25'},
        'control': {'pi1': '0', 'pi2': '0', 'pi3': '1'},
    },
    'case-uvw': {
        'scenario': {'label': 'case-uvw'},
        'params': FIG12_PARAMS,
        'grid': {'tf': '25'},
        'control': {'pi1': '1', 'pi2': '1', 'pi3': '1'},
    },
}

PRESET_NAMES = tuple(PRESETS)
