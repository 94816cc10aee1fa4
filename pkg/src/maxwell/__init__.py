"""
The four Maxwell relations, checked through Jacobian quotients, held-constant partial
derivatives and the closure of each Legendre potential's natural 1-form.
"""
