import random
from itertools import combinations

from cltwe.exact_cover import ExactCoverInstance


def random_solvable_instance(rng: random.Random, max_u=12, max_sets=20):
    """A planted partition of the universe padded with random distractor sets.

    Returns ``(instance, planted_witness)``.
    """
    U = rng.randint(1, max_u)
    elems = list(range(U))
    rng.shuffle(elems)
    blocks = []
    i = 0
    while i < U:
        k = rng.randint(1, min(4, U - i))
        blocks.append(sorted(elems[i:i + k]))
        i += k
    extra = rng.randint(0, max_sets - len(blocks))
    distractors = [sorted(rng.sample(range(U), rng.randint(1, min(4, U)))) for _ in range(extra)]
    tagged = [(b, True) for b in blocks] + [(d, False) for d in distractors]
    rng.shuffle(tagged)
    sets = [s for s, _ in tagged]
    planted = tuple(i for i, (_, mine) in enumerate(tagged) if mine)
    return ExactCoverInstance(U, sets), planted


def brute_force_covers(instance):
    """Every exact cover, by enumerating all subsets of the family."""
    U = instance.universe_size
    out = []
    idx = range(len(instance.sets))
    for k in range(len(instance.sets) + 1):
        for combo in combinations(idx, k):
            seen = []
            for i in combo:
                seen.extend(instance.sets[i])
            if len(seen) == U and set(seen) == set(range(U)):
                out.append(combo)
    return out
