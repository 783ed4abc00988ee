# documents/reports - __init__.py