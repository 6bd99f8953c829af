"""
Similarity invariants of non-lightlike curves in Minkowski 3-space.
"""
