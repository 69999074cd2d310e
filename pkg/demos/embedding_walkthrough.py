"""
Localized patterns and path embeddings
======================================

A tuple is described by the labeled walks that pass through it. This
walkthrough builds a small geography graph, cuts out the pattern around
one candidate tuple and turns it into a comparable multiset of paths.
"""

from kgmend import GraphStore, Tuple, dump_pattern, extract_pattern, format_embedding, sim, traverse_r

# a handful of facts around two places
g = GraphStore()
for line in [
    ("Earth", "contains", "India"),
    ("Gurgaon", "country", "India"),
    ("Sikkim", "containsBy", "India"),
    ("Uttar_Pradesh", "administrative_children", "Gorakhpur"),
    ("Gorakhpur", "administrative_parent", "Uttar_Pradesh"),
    ("Anurag_Kashyap", "place_of_birth", "Gorakhpur"),
]:
    g.add_tuple(Tuple(*line))

# the candidate we want to describe; it is not stored yet
candidate = Tuple("India", "contains", "Gorakhpur")

# the pattern is the radius-1 neighborhood around both endpoints,
# including the candidate itself
pattern = extract_pattern(g, candidate, 1)
print(dump_pattern(pattern))

# every pair of walks meeting at the candidate becomes one path;
# sorting the labels makes paths comparable across directions
embedding = traverse_r(pattern, 1)
print(format_embedding(embedding), end="")

# a stored occurrence with the same label yields its own embedding
witness = Tuple("Earth", "contains", "India")
witness_embedding = traverse_r(extract_pattern(g, witness, 1), 1)

# overlap of the two multisets, normalized by the smaller one
print("similarity:", sim(embedding, witness_embedding))
