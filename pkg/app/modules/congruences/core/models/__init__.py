# app/modules/congruences/core/models/__init__.py
