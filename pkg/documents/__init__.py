# documents - __init__.py