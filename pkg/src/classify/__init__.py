"""Group Classes and Characteristic Subgroups Package"""
