# app/modules/congruences/core/schemas/__init__.py
