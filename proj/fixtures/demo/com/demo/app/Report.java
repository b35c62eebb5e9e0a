package com.demo.app;

import com.demo.model.Book;
import com.demo.model.Loan;
import com.demo.model.Member;
import com.demo.repo.BookRepository;
import com.demo.repo.LoanRepository;
import com.demo.repo.MemberRepository;
import java.time.LocalDate;
import java.util.ArrayList;
import java.util.List;

public class Report {
    private final BookRepository books;
    private final MemberRepository members;
    private final LoanRepository loans;
    private final ReportFormatter formatter = new ReportFormatter(18);

    public Report(BookRepository books, MemberRepository members, LoanRepository loans) {
        this.books = books;
        this.members = members;
        this.loans = loans;
    }

    public String inventory() {
        List<String[]> rows = new ArrayList<>();
        for (Book b : books.findAll()) {
            rows.add(new String[] {b.getId(), b.getTitle(), String.valueOf(b.getCopies())});
        }
        return formatter.heading("inventory") + formatter.table(rows);
    }

    public String overdue(LocalDate today) {
        List<String[]> rows = new ArrayList<>();
        for (Loan l : loans.overdue(today)) {
            Member m = l.getMember();
            rows.add(new String[] {m.getName(), l.getBook().getTitle(), Long.toString(l.overdueDays(today))});
        }
        if (rows.isEmpty()) {
            return formatter.heading("overdue") + "none\n";
        }
        return formatter.heading("overdue") + formatter.table(rows);
    }

    public String balances() {
        StringBuilder sb = new StringBuilder(formatter.heading("balances"));
        for (Member m : members.findAll()) {
            if (m.getBalance() > 0) {
                sb.append(m.getName()).append(": ").append(m.getBalance()).append('\n');
            }
        }
        sb.append("total: ").append(members.totalBalance()).append('\n');
        return sb.toString();
    }
}
