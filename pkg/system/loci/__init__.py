# system/loci - __init__.py