from app import create_app
from app.models import Weight
from app.polytope import face_census, lagrangian_faces

app = create_app()

with app.app_context():
    print(f"{'n':<3} | {'Faces':<7} | {'Lagrangian':<10} | {'Faces per dimension'}")
    print("-" * 80)
    for n in range(2, app.config['MAX_ORACLE_N'] + 1):
        w = Weight.monotone(n)
        census = face_census(w, n)
        lagrangian = len(lagrangian_faces(w, n))
        print(f"{n:<3} | {sum(census):<7} | {lagrangian:<10} | {census}")
