"""Normal Subgroup Lattice Package"""
