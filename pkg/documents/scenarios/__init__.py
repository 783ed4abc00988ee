# documents/scenarios - __init__.py