# documents/figures - __init__.py