from corrcomplete.models import random_instance

FIXTURE_PARAMS = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7)

# Closed-form fills of the cross-currency fixture
FIXTURE_FILLS = {
    ('E', 'nu_X'): 0.35,
    ('A', 'nu_X'): 0.42,
    ('E', 'nu_A'): 0.12,
    ('X', 'nu_A'): 0.18,
    ('nu_X', 'nu_A'): 0.126,
    ('nu_E', 'A'): 0.08,
    ('nu_E', 'nu_A'): 0.024,
    ('nu_E', 'X'): 0.10,
    ('nu_E', 'nu_X'): 0.07,
}


def small_instance(seed, max_free=6, n=5):
    '''
    First random instance from `seed` onwards with at most `max_free` free entries.
    '''
    while True:
        pattern, source = random_instance(n, seed, fill_probability=0.5)
        if len(pattern.unspecified_pairs()) <= max_free:
            return pattern, source
        seed += 10_000
