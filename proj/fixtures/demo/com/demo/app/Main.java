package com.demo.app;

import com.demo.model.Member;
import com.demo.repo.BookRepository;
import com.demo.repo.LoanRepository;
import com.demo.repo.MemberRepository;
import com.demo.service.CatalogService;
import com.demo.service.EmailNotifier;
import com.demo.service.FeeCalculator;
import com.demo.service.LoanService;
import com.demo.service.NotificationService;
import com.demo.service.SmsNotifier;
import com.demo.util.Dates;
import java.time.LocalDate;

public class Main {
    public static void main(String[] args) {
        BookRepository books = new BookRepository();
        MemberRepository members = new MemberRepository();
        LoanRepository loans = new LoanRepository();
        NotificationService notifications = new NotificationService();
        notifications.register(new EmailNotifier("library@example.org"));
        notifications.register(new SmsNotifier(100));
        LoanService service = new LoanService(books, members, loans, new FeeCalculator(), notifications);
        CatalogService catalog = new CatalogService(books);
        CommandParser parser = new CommandParser();
        LocalDate today = LocalDate.of(2024, 1, 15);

        catalog.add("B1", "Dune", "Frank Herbert", "F", 2);
        catalog.add("B2", "Cosmos", "Carl Sagan", "S", 1);
        members.save(new Member("M1", "Ada"));

        for (String line : args) {
            CommandParser.Command cmd = parser.parse(line);
            if (cmd == null) continue;
            switch (cmd.verb()) {
                case "borrow":
                    System.out.println(service.borrow(cmd.args().get(0), cmd.args().get(1), today).ok());
                    break;
                case "return":
                    System.out.println(service.giveBack(cmd.args().get(0), today).ok());
                    break;
                case "advance":
                    today = Dates.nextBusinessDay(today);
                    break;
                case "report":
                    System.out.print(new Report(books, members, loans).overdue(today));
                    break;
                default:
                    System.err.println("unknown command " + cmd.verb());
            }
        }
    }
}
