# system/explorer - __init__.py