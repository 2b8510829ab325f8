"""
Duplication roots
=================

A tandem duplication copies a substring of length at most 3 next to itself.
Undoing duplications until none remain gives a unique irreducible string,
the duplication root.  A single substitution can change the root, but only
inside a short window.
"""

# %%
from tdsub import apply_duplication, apply_substitution, root, root_diff, word_str

x = "1201210"
y = apply_duplication(x, 1, 3)
y = apply_duplication(y, 4, 2)
y = apply_duplication(y, 6, 1)
print(word_str(y), "->", word_str(root(y)))

# %%
# Substituting a symbol and then taking the root again.  The two roots agree
# outside one window; root_diff finds the smallest such window.
z = apply_substitution(y, 7, 1)
d = root_diff(root(y), root(z))
print("root before:", word_str(root(y)))
print("root after: ", word_str(root(z)))
print("common prefix", word_str(d.prefix), "| removed", word_str(d.removed),
      "| inserted", word_str(d.inserted), "| common suffix", word_str(d.suffix))

# %%
# How long can the root of a descendant of 012 get after one substitution?
from tdsub import max_root_after_one_sub

length, witness = max_root_after_one_sub("012", 13)
print(f"longest root: {length}, reached by {word_str(witness)}")
