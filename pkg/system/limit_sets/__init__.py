# system/limit_sets - __init__.py