from typing import Dict, List, Optional

from app.enums import GraphClass
from app.models.graph import FaceSet, Graph
from app.schemas.graph_schemas import AuditReport, FaceAudit, InequalityCheck, Violation
from app.exceptions.errors import EmbeddingError, GraphClassMismatch, PreconditionError
from app.services.embedding_service import EmbeddingService
from app.services.graph_service import GraphService
from app.core.logger import get_logger

logger = get_logger("audit_service")


class AuditService:
    """Service for the Euler counting audit of plane graphs."""

    @staticmethod
    def discharging_audit(g: Graph, mode: GraphClass, faces: Optional[FaceSet] = None) -> AuditReport:
        if g.n == 0 or len(GraphService.connected_components(g)) != 1:
            raise PreconditionError("the audit needs a connected plane graph")
        girth = GraphService.girth(g)
        if girth < mode.min_girth:
            raise GraphClassMismatch(
                f"graph has girth {girth}, mode {mode.value} needs at least {mode.min_girth}"
            )
        faces = faces or EmbeddingService.trace_faces(g)

        threshold = 4
        vertex_counts = g.degree_counts()
        face_counts: Dict[int, int] = {}
        for length in faces.lengths:
            face_counts[length] = face_counts.get(length, 0) + 1
        face_counts = dict(sorted(face_counts.items()))

        audited: List[FaceAudit] = []
        for i, walk in enumerate(faces.faces):
            distinct = set(walk)
            if mode is GraphClass.GIRTH4:
                heavy = sum(1 for v in distinct if g.degree(v) >= threshold)
            else:
                heavy = sum(1 for v in distinct if g.degree(v) == threshold)
            audited.append(FaceAudit(index=i, length=len(walk), walk=list(walk), heavy_vertices=heavy))

        euler_sum = sum((2 * d - 6) * c for d, c in vertex_counts.items()) + sum(
            (l - 6) * c for l, c in face_counts.items()
        )
        if euler_sum != -12:
            raise EmbeddingError(f"Euler sum is {euler_sum}, not -12: faces do not match a plane embedding")

        n4 = vertex_counts.get(4, 0)
        n5 = vertex_counts.get(5, 0)
        k4 = face_counts.get(4, 0)
        k5 = face_counts.get(5, 0)
        if mode is GraphClass.GIRTH4:
            incidence = sum(f.heavy_vertices for f in audited if f.length in (4, 5))
            inequalities = [
                AuditService._check("face_incidence", "4n4 + 5n5 >= sum of c4+ over 4- and 5-faces",
                                    4 * n4 + 5 * n5, incidence),
                AuditService._check("face_demand", "4n4 + 5n5 >= 4k4 + 2k5",
                                    4 * n4 + 5 * n5, 4 * k4 + 2 * k5),
                AuditService._check("euler_lower", "euler_sum >= 2n4 + 4n5 - 2k4 - k5",
                                    euler_sum, 2 * n4 + 4 * n5 - 2 * k4 - k5),
                AuditService._check("euler_nonnegative", "2n4 + 4n5 - 2k4 - k5 >= 0",
                                    2 * n4 + 4 * n5 - 2 * k4 - k5, 0),
            ]
        else:
            incidence = sum(f.heavy_vertices for f in audited if f.length == 5)
            inequalities = [
                AuditService._check("face_incidence", "4n4 >= sum of c4 over 5-faces", 4 * n4, incidence),
                AuditService._check("face_demand", "4n4 >= 2k5", 4 * n4, 2 * k5),
                AuditService._check("euler_lower", "euler_sum >= 2n4 - k5", euler_sum, 2 * n4 - k5),
                AuditService._check("euler_nonnegative", "2n4 - k5 >= 0", 2 * n4 - k5, 0),
            ]

        violations = AuditService.violations(g, mode, audited)
        logger.debug(f"Audit {mode.value} on n={g.n}: {len(violations)} local violations")
        return AuditReport(
            mode=mode,
            n=g.n,
            m=g.m,
            vertex_counts=vertex_counts,
            face_counts=face_counts,
            faces=audited,
            euler_sum=euler_sum,
            inequalities=inequalities,
            violations=violations,
        )

    @staticmethod
    def _check(name: str, statement: str, lhs: int, rhs: int) -> InequalityCheck:
        return InequalityCheck(name=name, statement=statement, lhs=lhs, rhs=rhs, holds=lhs >= rhs)

    @staticmethod
    def violations(g: Graph, mode: GraphClass, audited: List[FaceAudit]) -> List[Violation]:
        """Faces and vertices that a minimal counter-example cannot contain."""
        found: List[Violation] = []
        for face in audited:
            walk = sorted(set(face.walk))
            if mode is GraphClass.GIRTH4:
                if face.length == 4 and face.heavy_vertices < 4:
                    found.append(Violation(predicate="four_face_light", face=face.index, vertices=walk))
                elif face.length == 5 and face.heavy_vertices < 2:
                    found.append(Violation(predicate="five_face_light", face=face.index, vertices=walk))
            elif face.length == 5 and face.heavy_vertices < 2:
                found.append(Violation(predicate="five_face_light", face=face.index, vertices=walk))

        if mode is GraphClass.GIRTH4:
            for v in range(g.n):
                if g.degree(v) != 3:
                    continue
                degrees = [g.degree(w) for w in g.adjacency[v]]
                if 3 in degrees and 4 in degrees:
                    found.append(Violation(predicate="deg3_deg3_deg4", vertices=[v]))
        return found
